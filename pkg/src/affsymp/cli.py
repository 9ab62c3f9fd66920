"""Command-line entry point.

Subcommands: ``algebra info``, ``homology``, ``invariants``, ``verify`` and
``cache``.  Exit codes: 0 all requested checks passed, 1 a verification
failed, 2 usage or domain error, 3 resource-guard abort.

The cache directory and memory cap come from ``--cache-dir`` /
``--memory-cap``, falling back to the environment variables
``AFFSYMP_CACHE_DIR`` / ``AFFSYMP_MEMORY_CAP``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cache import DiffCache
from .errors import AffsympError, DomainError, ResourceLimitError
from .homology import homology_report
from .invariants import invariant_dimension_report
from .lie_structures import (
    adjoint_module,
    build_g,
    build_I,
    build_sp,
    exterior_power_module,
    restriction_module,
    submodule,
    trivial_module,
)
from .chain_complexes import (
    ce_complex,
    coeff_complex,
    cr_complex,
    leibniz_complex,
    rel_complex,
)
from .theorems import CLAIM_IDS, VerificationContext, run_all, run_claim

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affsymp",
        description=(
            "Exact-arithmetic homology engine for the affine symplectic "
            "Lie algebra and its subalgebras."
        ),
    )
    parser.add_argument("--version", action="version", version=f"affsymp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--cache-dir", default=None, help="differential cache directory")
        p.add_argument(
            "--memory-cap", type=int, default=None,
            help="abort when a matrix would exceed this many nonzero entries",
        )

    p_alg = sub.add_parser("algebra", help="inspect the built algebras")
    alg_sub = p_alg.add_subparsers(dest="algebra_command", required=True)
    p_info = alg_sub.add_parser("info", help="dimensions, labels, structure constants")
    p_info.add_argument("--family", required=True)
    p_info.add_argument("--n", type=int, required=True)
    common(p_info)

    p_hom = sub.add_parser("homology", help="Betti numbers of one complex")
    p_hom.add_argument("--family", required=True)
    p_hom.add_argument("--n", type=int, required=True)
    p_hom.add_argument(
        "--theory", required=True,
        help="lie | leibniz | adjoint | coeff:<trivial|adjoint|I^k> | rel | cr",
    )
    p_hom.add_argument("--max-degree", type=int, required=True)
    p_hom.add_argument("--emit-cycles", action="store_true")
    common(p_hom)

    p_inv = sub.add_parser("invariants", help="invariant dimension tables")
    p_inv.add_argument("--n", type=int, required=True)
    p_inv.add_argument("--k-max", type=int, required=True)
    common(p_inv)

    p_ver = sub.add_parser("verify", help="run one claim or the full suite")
    p_ver.add_argument(
        "claim", help="claim id (" + ", ".join(CLAIM_IDS) + ") or 'all'"
    )
    p_ver.add_argument("--n", type=int, required=True)
    p_ver.add_argument("--cap", type=int, default=None)
    common(p_ver)

    p_cache = sub.add_parser("cache", help="manage the differential cache")
    p_cache.add_argument("cache_command", choices=("info", "clear"))
    p_cache.add_argument("--cache-dir", default=None)
    return parser


def _resolve_cache(args) -> DiffCache | None:
    path = args.cache_dir or os.environ.get("AFFSYMP_CACHE_DIR")
    return DiffCache(path) if path else None


def _resolve_cap(args) -> int | None:
    if getattr(args, "memory_cap", None) is not None:
        return args.memory_cap
    env = os.environ.get("AFFSYMP_MEMORY_CAP")
    return int(env) if env else None


def _algebra_for(family: str, n: int):
    if family == "sp":
        return build_sp(n), None
    if family == "I":
        return build_I(n), None
    if family == "g":
        algebra, split = build_g(n)
        return algebra, split
    raise DomainError(f"unknown family {family!r} (expected sp, I or g)")


def _module_for(spec: str, family: str, n: int, algebra):
    if spec == "trivial":
        return trivial_module(algebra)
    if spec == "adjoint":
        return adjoint_module(algebra, validate=False)
    if spec.startswith("I^"):
        try:
            k = int(spec[2:])
        except ValueError:
            raise DomainError(f"bad exterior power in module spec {spec!r}")
        if k < 0:
            raise DomainError("exterior power must be >= 0")
        if family == "I":
            raise DomainError("coefficients I^k need the sp or g action")
        g_algebra, split = build_g(n)
        g_adj = adjoint_module(g_algebra, validate=False)
        if family == "g":
            base = submodule(g_adj, split.ideal_indices)
        else:
            base = submodule(
                restriction_module(g_adj, split.quotient_indices), split.ideal_indices
            )
        return exterior_power_module(base, k, validate=False)
    raise DomainError(f"unknown module spec {spec!r} (trivial, adjoint or I^k)")


def _cmd_algebra_info(args) -> int:
    algebra, split = _algebra_for(args.family, args.n)
    payload = {
        "report": "algebra",
        "family": args.family,
        "n": args.n,
        "validation_passed": algebra.validate().passed,
        **algebra.to_json_dict(),
    }
    if split is not None:
        payload["ideal_indices"] = list(split.ideal_indices)
        payload["quotient_indices"] = list(split.quotient_indices)
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "csv":
        print("i,j,k,coefficient")
        for i, j, k, v in payload["brackets"]:
            print(f"{i},{j},{k},{v}")
    else:
        print(f"family {args.family}, n={args.n}: dimension {algebra.dim}")
        print(f"nonzero bracket coefficients: {len(payload['brackets'])}")
        print(f"validation: {'pass' if payload['validation_passed'] else 'FAIL'}")
        for i, label in enumerate(algebra.labels):
            print(f"  e{i} = {label}")
    return EXIT_OK


def _cmd_homology(args) -> int:
    cache = _resolve_cache(args)
    entry_cap = _resolve_cap(args)
    if args.max_degree < 0:
        raise DomainError("max degree must be >= 0")
    algebra, _ = _algebra_for(args.family, args.n)
    cap = args.max_degree + 1  # one degree above keeps every reported row exact
    label = f"{args.family}{args.n}"
    theory = args.theory
    if theory == "lie":
        complex_ = ce_complex(algebra, cap, cache, entry_cap, name=f"lie({label})")
    elif theory == "leibniz":
        complex_ = leibniz_complex(algebra, cap, cache, entry_cap, name=f"leibniz({label})")
    elif theory == "adjoint":
        complex_ = coeff_complex(
            algebra, adjoint_module(algebra, validate=False), cap, cache, entry_cap,
            name=f"adjoint({label})",
        )
    elif theory.startswith("coeff:"):
        module = _module_for(theory[len("coeff:"):], args.family, args.n, algebra)
        complex_ = coeff_complex(
            algebra, module, cap, cache, entry_cap,
            name=f"coeff({label},{theory[len('coeff:'):]})",
        )
    elif theory == "rel":
        complex_ = rel_complex(algebra, cap, cache, entry_cap, name=f"rel({label})")
    elif theory == "cr":
        complex_ = cr_complex(algebra, cap, cache, entry_cap, name=f"cr({label})")
    else:
        raise DomainError(f"unknown theory {theory!r}")
    report = homology_report(complex_, args.max_degree, emit_cycles=args.emit_cycles)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print(report.to_csv(), end="")
    else:
        print(report.to_text())
    return EXIT_OK


def _cmd_invariants(args) -> int:
    table = invariant_dimension_report(args.n, args.k_max)
    if args.format == "json":
        print(table.to_json())
    elif args.format == "csv":
        print(table.to_csv(), end="")
    else:
        print(table.to_text())
    return EXIT_OK if table.passed else EXIT_VERIFICATION_FAILED


def _cmd_verify(args) -> int:
    cache = _resolve_cache(args)
    entry_cap = _resolve_cap(args)
    ctx = VerificationContext(cache=cache, entry_cap=entry_cap)
    if args.claim == "all":
        reports = run_all(ctx, args.n)
        if not reports:
            raise DomainError(f"no claims configured for n={args.n}")
        passed = all(r.passed for r in reports)
        if args.format == "json":
            payload = {
                "report": "verification-suite",
                "n": args.n,
                "passed": passed,
                "reports": [r.to_json_dict() for r in reports],
            }
            print(json.dumps(payload, indent=2, sort_keys=True))
        elif args.format == "csv":
            print("claim,part,degree,expected,computed,passed")
            for r in reports:
                for row in r.rows:
                    deg = "" if row.degree is None else row.degree
                    print(
                        f"{r.claim_id},{row.part},{deg},{row.expected},"
                        f"{row.computed},{str(row.passed).lower()}"
                    )
        else:
            for r in reports:
                print(r.to_text())
        return EXIT_OK if passed else EXIT_VERIFICATION_FAILED
    if args.claim not in CLAIM_IDS:
        raise DomainError(
            f"unknown claim {args.claim!r}; choose from {', '.join(CLAIM_IDS)} or all"
        )
    report = run_claim(ctx, args.claim, args.n, args.cap)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print("claim,part,degree,expected,computed,passed")
        for row in report.rows:
            deg = "" if row.degree is None else row.degree
            print(
                f"{report.claim_id},{row.part},{deg},{row.expected},"
                f"{row.computed},{str(row.passed).lower()}"
            )
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _cmd_cache(args) -> int:
    path = args.cache_dir or os.environ.get("AFFSYMP_CACHE_DIR")
    if not path:
        raise DomainError("no cache directory given (flag --cache-dir or AFFSYMP_CACHE_DIR)")
    cache = DiffCache(path)
    if args.cache_command == "info":
        print(json.dumps(cache.stats(), indent=2, sort_keys=True))
    else:
        removed = cache.clear()
        print(f"removed {removed} cached artifacts from {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        if args.command == "algebra":
            return _cmd_algebra_info(args)
        if args.command == "homology":
            return _cmd_homology(args)
        if args.command == "invariants":
            return _cmd_invariants(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "cache":
            return _cmd_cache(args)
        raise DomainError(f"unknown command {args.command!r}")
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AffsympError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
