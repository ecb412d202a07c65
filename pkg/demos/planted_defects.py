"""Every checker earns its keep against a planted defect.

Each fixture here breaks exactly one law and is fed to the honest
driver built to catch it.  A healthy library prints a wall of FAILs
with witnesses -- that is the point: if one of these ever turns green,
the corresponding checker has gone soft.
"""

from ngd.fixtures import run_planted_suite


def main():
    for name, rep in run_planted_suite(seed=0, samples=150):
        verdict = "caught" if not rep.passed else "MISSED!"
        print(f"[{verdict}] {name}")
        for law in rep.laws:
            if law.failures and law.witnesses:
                print(f"    {law.law}")
                print(f"    witness: {law.witnesses[0]}")
                break
        else:
            for est in rep.limits:
                if not est.passed:
                    print(f"    {est.axiom}: {est.note}")
                    break
        print()


if __name__ == "__main__":
    main()
