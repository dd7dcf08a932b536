"""Tabulate line families and the closed Y1 orbit for every maximal parabolic."""
import argparse

from homvar.dynkin import all_specs, build_diagram
from homvar.linspaces import line_classes
from homvar.parabolic import ParabolicSpec, closed_orbit_Y1, dimension


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rank", type=int, default=6)
    args = ap.parse_args()
    print(f"{'space':<10} {'dim':>4}  {'closed orbit of lines':<22} {'open':>5}  Y1")
    for spec in all_specs(args.max_rank):
        for i in build_diagram(spec).nodes:
            ps = ParabolicSpec(spec, frozenset({i}))
            (fam,) = line_classes(ps)
            y1 = closed_orbit_Y1(ps.roots, ps.S, i)
            open_dim = fam.open_dim if fam.exposed_short else "-"
            print(f"{str(ps):<10} {dimension(ps):>4}  "
                  f"{fam.closed_orbit.describe() + f' ({fam.closed_dim})':<22} {open_dim:>5}  "
                  f"{y1.describe()}")


if __name__ == "__main__":
    main()
