"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a failed gate or a failed
verification (table rows that do not verify, a nonzero elliptic residual).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .blowdiag import verify_table
from .certificates import Certificate, certificates_to_json, sort_certificates
from .cones import toric_big_diagonal, toric_nef_diagonal
from .corpus import TORIC_PRESETS, toric_certificates
from .criteria import (
    MorphismFact, classify_surface, hypersurface_pipeline, k3_status, perturbed_diagonal_surface,
    threefold_obstruction,
)
from .elliptic import verify_blowup_elliptic
from .errors import DataError, DiagposError, InvariantViolation, UsageError, VerificationFailure
from .selfprod import KunnethData, kunneth_big_nef_certificate, kunneth_p1xp1, kunneth_projective_space, kunneth_quadric
from .toric import FanDescription, toric_from_fan
from .varieties import SurfaceInvariants, ThreefoldInvariants

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}") from exc


def _kunneth_preset(name: str) -> KunnethData:
    if name == "P1xP1":
        return kunneth_p1xp1()
    if len(name) >= 2 and name[0] in "PQ" and name[1:].isdigit():
        n = int(name[1:])
        if n < 1:
            raise UsageError("dimension must be positive")
        return kunneth_projective_space(n) if name[0] == "P" else kunneth_quadric(n)
    raise UsageError(f"unknown Kunneth preset {name!r}; use Pn, Qn or P1xP1")


# -- subcommand handlers: each returns (exit code, json payload, text lines) ----------


def _certs(certs: Sequence[Certificate]):
    certs = sort_certificates(certs)
    return EXIT_OK, json.loads(certificates_to_json(certs)), [c.summary() for c in certs]


def cmd_hypersurface(a):
    return _certs(hypersurface_pipeline(a.dim, a.deg))


def cmd_k3(a):
    return _certs(k3_status(a.degree, not a.higher_picard_rank))


def cmd_toric(a):
    if a.fan:
        x = toric_from_fan(FanDescription.from_json(_read(a.fan)))
        return _certs([toric_big_diagonal(x), toric_nef_diagonal(x)])
    return _certs(toric_certificates(a.preset))


def cmd_surface(a):
    data = _load_json(a.file)
    if not isinstance(data, dict):
        raise DataError("surface file must hold a JSON object")
    s = SurfaceInvariants.from_dict(data)
    facts = [MorphismFact.from_dict(f) for f in data.get("facts", [])]
    return _certs(classify_surface(s, facts) + [perturbed_diagonal_surface(s)])


def cmd_threefold(a):
    if a.file:
        data = _load_json(a.file)
        if not isinstance(data, dict):
            raise DataError("threefold file must hold a JSON object")
        t = ThreefoldInvariants.from_dict(data)
    else:
        if a.c1c2 is None or a.kodaira is None or a.c1_cubed is None:
            raise UsageError("give --file, or all of --c1-cubed, --c1c2 and --kodaira")
        t = ThreefoldInvariants.from_dict({"name": a.name, "c1_cubed": a.c1_cubed, "c1c2": a.c1c2,
                                           "kodaira": a.kodaira, "minimal": not a.non_minimal,
                                           "hodge": a.hodge or []})
    return _certs([threefold_obstruction(t)])


def cmd_verify_table(a):
    reports = verify_table(corrected=a.errata)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_INVARIANT
    lines = [r.summary() for r in reports]
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} rows verified"
                 + (" (with errata)" if a.errata else ""))
    return code, {"rows": [r.to_dict() for r in reports], "errata": a.errata}, lines


def cmd_blowup_elliptic(a):
    rep = verify_blowup_elliptic()
    certs = sort_certificates(rep.certificates())
    payload = {"report": rep.to_dict(), "certificates": json.loads(certificates_to_json(certs))}
    lines = [f"span dimension {rep.span_dimension}, rank of terms {rep.terms_rank}",
             "residual " + " ".join(str(x) for x in rep.residual),
             "coefficients " + ", ".join(f"{k}: {v}" for k, v in rep.coefficients),
             f"Delta.H1E1E2 = {rep.delta_dot_H1E1E2}"] + [c.summary() for c in certs]
    if not rep.identity_holds:
        lines.insert(0, "identity FAILED")
    return (EXIT_OK if rep.passed else EXIT_INVARIANT), payload, lines


def cmd_kunneth(a):
    k = KunnethData.from_json(_read(a.file)) if a.file else _kunneth_preset(a.preset)
    return _certs(kunneth_big_nef_certificate(k))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diagpos", description="Positivity certificates for the diagonal of a smooth projective variety.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")
        sp.set_defaults(handler=handler)
        return sp

    sp = add("hypersurface", cmd_hypersurface, "smooth hypersurface of dimension n and degree d")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)

    sp = add("k3", cmd_k3, "K3 surface of even degree")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--higher-picard-rank", action="store_true", help="do not assume Picard rank one")

    sp = add("toric", cmd_toric, "smooth projective toric variety")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--fan", help="JSON file with rays and max_cones")
    g.add_argument("--preset", choices=sorted(TORIC_PRESETS))

    sp = add("surface", cmd_surface, "surface given by invariants and declared facts")
    sp.add_argument("--file", required=True)

    sp = add("threefold", cmd_threefold, "minimal threefold of nonnegative Kodaira dimension")
    sp.add_argument("--file")
    sp.add_argument("--name", default="threefold")
    sp.add_argument("--c1-cubed", type=int)
    sp.add_argument("--c1c2", type=int)
    sp.add_argument("--kodaira", type=int, choices=[0, 1, 2, 3])
    sp.add_argument("--hodge", type=int, nargs=3, metavar=("H10", "H20", "H30"))
    sp.add_argument("--non-minimal", action="store_true")

    sp = add("verify-table", cmd_verify_table, "verify the hypersurface decomposition table")
    sp.add_argument("--errata", action="store_true", help="apply the shipped corrections first")

    add("blowup-elliptic", cmd_blowup_elliptic, "blow-up of P3 along a plane cubic curve")

    sp = add("kunneth", cmd_kunneth, "Kunneth decomposition from a basis and Gram matrix")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--file")
    g.add_argument("--preset", help="Pn, Qn or P1xP1")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, payload, lines = args.handler(args)
    except (UsageError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DiagposError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return code


def run() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
