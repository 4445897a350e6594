"""``lochodge`` command-line entry point.

Exit codes: 0 success, 1 a theorem verdict failed under --assert,
2 input error, 3 a computation cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .report import COMMANDS, RunConfig, run
from .resolutions import CapExceeded


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lochodge",
                                description="Local cohomology of monomial ideals and its filtrations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("files", nargs="*", help="ideal file (not used by 'corpus')")
    p.add_argument("--box", type=int, default=None, help="box radius B for degree sweeps")
    p.add_argument("--kmax", type=int, default=2, help="largest filtration index")
    p.add_argument("--q", type=int, default=None, help="cohomological degree (default: all possible)")
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "md"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: cpu count)")
    p.add_argument("--assert", dest="assert_verdicts", action="store_true",
                   help="exit 1 if any theorem verdict fails")
    p.add_argument("--tcap", type=int, default=None, help="cap on the Koszul exponent t")
    p.add_argument("--count", type=int, default=10, help="corpus size")
    p.add_argument("--n", type=int, default=4, help="corpus variable count")
    p.add_argument("--density", type=float, default=0.25, help="corpus subset density")
    p.add_argument("--added-vars", type=int, default=1, help="variables added by 'shift'")
    p.add_argument("--hodge-ideal", default=None, help="ideal file holding I_k(f) for 'jk'")
    p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(command=args.command, paths=args.files, box=args.box, k_max=args.kmax, q=args.q,
                        fmt=args.fmt, seed=args.seed, jobs=args.jobs,
                        assert_verdicts=args.assert_verdicts, tcap=args.tcap, count=args.count,
                        n=args.n, density=args.density, added_vars=args.added_vars,
                        hodge_ideal=args.hodge_ideal)
        report = run(cfg)
    except CapExceeded as e:
        print(f"lochodge: cap exceeded: {e}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as e:
        print(f"lochodge: {e}", file=sys.stderr)
        return 2
    text = report.render(cfg.fmt)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.assert_verdicts and report.failed:
        for v in report.failed:
            print(f"lochodge: verdict failed: {v['name']} ({v['scope']})", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
