"""Check the normal-space tables of the cominuscule varieties at small rank."""
import argparse

from homvar.dynkin import GuardExceeded
from homvar.parabolic import ParabolicSpec
from homvar.reps import normal_spaces, verify_normal_space

SPACES = ["A3/P2", "A4/P2", "A5/P3", "B3/P1", "B4/P1", "C3/P3", "C4/P4", "D4/P1",
          "D5/P5", "D6/P6", "E6/P1", "E7/P7"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("spaces", nargs="*", default=SPACES)
    ap.add_argument("--guard", type=int, default=10**5)
    args = ap.parse_args()
    for text in args.spaces:
        ps = ParabolicSpec.parse(text)
        table = normal_spaces(ps)
        print(f"{ps}  {table.family}  dims {table.dims()}")
        for j in range(1, table.length + 2):
            try:
                rep = verify_normal_space(ps, j, args.guard)
            except GuardExceeded as e:
                print(f"  skip N_{j}: {e}")
                break
            print(f"  {'ok  ' if rep.ok else 'FAIL'} {rep.summary()}")


if __name__ == "__main__":
    main()
