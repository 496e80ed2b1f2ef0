"""Compare the two plugging readings and the two duals on the small suite.

For each plug reading, count subjects where Frobenius and the two
residuation flags disagree. Then count, for each dual, how many subjects
break the duality laws or the comonoid laws of the derived comultiplication.
"""
from prelab.enumeration import representable_monoids, subjects
from prelab.monoid import PLUGS, check_frobenius, check_residuated, comonoid_law_failure, comonoid_of
from prelab.order import enumerate_preorders
from prelab.prelation import converse_dual, ddag


def plug_table(suite):
    rows = {}
    for plug in PLUGS:
        bad = [i for i, M in enumerate(suite)
               if not (check_frobenius(M).holds
                       == check_residuated(M, "left", plug).holds
                       == check_residuated(M, "right", plug).holds)]
        rows[plug] = bad
    return rows


def dual_table(suite):
    rows = {}
    for name, dual in (("ddag", ddag), ("converse", converse_dual)):
        rows[name] = sum(comonoid_law_failure(M, comonoid_of(M, dual)) is not None
                         for M in suite)
    return rows


def main():
    small = subjects(2, "general")
    full = small + [M for P in enumerate_preorders(3) for M in representable_monoids(P)]
    for label, suite in (("size <= 2", small), ("size <= 2 plus representable 3", full)):
        print(f"{label} ({len(suite)} subjects)")
        for plug, bad in plug_table(suite).items():
            print(f"    plug {plug:12s} disagreements {len(bad)}")
        for name, bad in dual_table(suite).items():
            print(f"    dual {name:12s} comonoid law failures {bad}")


if __name__ == "__main__":
    main()
