"""Write catalog JSON reports for each enumeration mode into a directory."""
import argparse
import json
from pathlib import Path

from prelab.enumeration import CatalogConfig, catalog

CONFIGS = (
    CatalogConfig(size=2, mode="general"),
    CatalogConfig(size=3, mode="representable"),
    CatalogConfig(size=3, mode="sampled", seed=0, count=500),
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="reports")
    out = Path(ap.parse_args().outdir)
    out.mkdir(parents=True, exist_ok=True)
    for cfg in CONFIGS:
        rep = catalog(cfg)
        path = out / f"catalog-{cfg.mode}-{cfg.size}.json"
        path.write_text(json.dumps(rep.as_dict(), sort_keys=True, indent=2) + "\n")
        print(f"{path}: {rep.total} subjects, passed={rep.passed}, "
              f"{len(rep.counts)} preorders")


if __name__ == "__main__":
    main()
