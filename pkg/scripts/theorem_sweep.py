"""Sweep the three theorems over exhaustive and sampled subjects.

    python scripts/theorem_sweep.py --sampled 2000 --seed 0
"""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from prelab.enumeration import examine, representable_monoids, subjects
from prelab.order import enumerate_preorders


@dataclass(frozen=True)
class SweepConfig:
    sampled: int = 1000
    seed: int = 0


def suites(cfg: SweepConfig):
    yield "general, size <= 2", subjects(2, "general")
    yield "representable, size 3", [M for P in enumerate_preorders(3)
                                    for M in representable_monoids(P)]
    if cfg.sampled:
        yield f"sampled, size 3, seed {cfg.seed}", subjects(3, "sampled", cfg.seed, cfg.sampled)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sampled", type=int, default=SweepConfig.sampled)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    cfg = SweepConfig(**vars(ap.parse_args()))
    for label, subs in suites(cfg):
        t0 = time.perf_counter()
        results = [examine(M) for M in subs]
        classes = Counter(r["class"] for r in results)
        bad = sum(not r["holds"] for r in results)
        print(f"{label}: {len(subs)} subjects, {bad} violations, "
              f"{time.perf_counter() - t0:.2f}s")
        for k, v in sorted(classes.items(), key=lambda kv: -kv[1]):
            print(f"    {v:5d}  {k}")


if __name__ == "__main__":
    main()
