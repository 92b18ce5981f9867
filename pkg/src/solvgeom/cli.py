"""Command-line frontend: verify, construct, reduce, classify, lattice.

Every command prints one JSON report with a fixed key order — the command
echo, the input file digest, the seed actually used, the structured
results, and a provenance marker ("published table" for the rendered
homology tables, "derived" for everything computed here).  Exit codes are
scriptable: 0 when the requested verdict holds, 1 when it is false, 2 for
usage errors, unreadable files, or payloads that break the contract.

Verdicts always come with their certificate: one named check per equation,
each carrying a witness when it fails, so a 1 exit pinpoints the first
broken identity instead of just saying no.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from .algio import (
    AlgebraFile,
    FormatError,
    algebra_payload,
    parse_algebra_payload,
    parse_presentation_payload,
    presentation_payload,
)
from .classify import FAMILY_NAMES, FamilyTag, IsoInvariant, build_family, classify_catalogue
from .contact import (
    AlmostContactStructure,
    LsaProduct,
    contact_verdict,
    lsa_completeness,
    lsa_from_central_extension,
    vaisman_to_cokahler,
)
from .forms import KForm
from .hermitian import (
    Check,
    ComplexStructure,
    HermitianData,
    KahlerFlatPackage,
    construct_vaisman,
    fundamental_form,
    hermitian_certificate,
    kahler_flat_check,
    lck_verdict,
    reduce_vaisman,
    spectrum_all_imaginary,
)
from .lattices import (
    HALF_TURN,
    QUARTER_TURN,
    OscillatorParams,
    abelianization,
    heisenberg_lattice_presentation,
    lattice_presentation_oscillator,
    lattice_presentation_tower,
    oscillator_algebra,
    oscillator_h1_closed_form,
    two_block_h1_table,
)
from .liealgebras import LieAlgebra, central_extension
from .matrices import Matrix
from .metrics import Metric, is_flat
from .rationals import format_rational, rat

OK, FALSE, USAGE = 0, 1, 2

STRUCTURES = (
    "lie",
    "metric",
    "hermitian",
    "lck",
    "vaisman",
    "kahler-flat",
    "sasakian",
    "cokahler",
    "lsa",
)

KINDS = (
    "central-ext",
    "double-ext",
    "vaisman",
    "cokahler",
    "lsa",
    "oscillator",
    "tower",
    "family",
)


class CliError(Exception):
    """Usage or input problem; main() turns it into exit code 2."""


# ---------------------------------------------------------------------------
# plumbing


def _read_json(path: str) -> tuple[Any, dict[str, str]]:
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from exc
    digest = hashlib.sha256(blob).hexdigest()
    try:
        payload = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        raise CliError(f"{path}: not valid JSON ({exc})") from exc
    return payload, {"path": path, "sha256": digest}


def _load_algebra(path: str) -> tuple[AlgebraFile, dict[str, str]]:
    payload, info = _read_json(path)
    try:
        return parse_algebra_payload(payload), info
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _write_json(path: str, payload: Any) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _report(
    ns: argparse.Namespace,
    argv: Sequence[str],
    *,
    input_info: dict[str, str] | None,
    results: dict[str, Any],
    provenance: str = "derived",
) -> dict[str, Any]:
    return {
        "command": list(argv),
        "input": input_info,
        "seed": ns.seed,
        "samples": ns.samples,
        "tolerance": ns.tolerance,
        "results": results,
        "provenance": provenance,
    }


def _emit(ns: argparse.Namespace, payload: Any) -> None:
    if ns.json:
        print(json.dumps(payload, ensure_ascii=False, separators=(",", ":")))
    else:
        print(json.dumps(payload, ensure_ascii=False, indent=2))


def _certificate(checks: Sequence[Check]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for c in checks:
        entry: dict[str, Any] = {"pass": c.passed}
        if c.witness is not None:
            entry["witness"] = c.witness
        out[c.name] = entry
    return out


def _fractions(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in values]


def _int_list(text: str | None, what: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise CliError(f"{what} must be a comma-separated list of integers") from None


def _rat_list(text: str | None, what: str) -> list[Fraction]:
    if not text:
        return []
    try:
        return [rat(tok) for tok in text.split(",")]
    except (ValueError, TypeError):
        raise CliError(f"{what} must be a comma-separated list of rationals") from None


def _gram(f: AlgebraFile) -> Matrix:
    return f.gram if f.gram is not None else Matrix.identity(f.algebra.dim)


def _need(f: AlgebraFile, attr: str, structure: str) -> Any:
    value = getattr(f, attr)
    if value is None:
        key = "metric" if attr == "gram" else attr
        raise CliError(f'"{structure}" needs the key "{key}" in the file')
    return value


# ---------------------------------------------------------------------------
# verify


def _lie_axiom_check(g: LieAlgebra) -> Check:
    res = g.validate()
    return Check("lie-bracket-axioms", res.ok, None if res.ok else res.message)


def _metric_checks(gram: Matrix) -> list[Check]:
    symmetric = gram.is_symmetric()
    checks = [
        Check("metric-symmetric", symmetric, None if symmetric else "gram ≠ gramᵀ")
    ]
    if not symmetric:
        checks.append(Check("metric-positive-definite", False, "skipped"))
        return checks
    witness = None
    for k in range(1, gram.rows + 1):
        minor = Matrix([[gram[i, j] for j in range(k)] for i in range(k)]).det()
        if minor <= 0:
            witness = f"leading {k}×{k} minor is {minor}"
            break
    checks.append(Check("metric-positive-definite", witness is None, witness))
    return checks


def _verify_structure(
    structure: str, f: AlgebraFile, seed: int, samples: int
) -> tuple[bool, list[Check], dict[str, Any]]:
    """Dispatch one structure verdict; returns (verdict, checks, extras)."""
    g = f.algebra
    n = g.dim
    checks = [_lie_axiom_check(g)]
    extras: dict[str, Any] = {}

    if structure == "lie":
        return checks[0].passed, checks, extras

    gram = _gram(f)
    checks.extend(_metric_checks(gram))
    sound = all(c.passed for c in checks)

    if structure == "metric":
        return sound, checks, extras

    if structure in ("hermitian", "lck", "vaisman"):
        jm = _need(f, "j", structure)
        if not sound:
            return False, checks, extras
        metric = Metric(gram)
        hermitian_ok, herm_checks = hermitian_certificate(g, metric, jm)
        checks.extend(herm_checks)
        if structure == "hermitian" or not hermitian_ok:
            return hermitian_ok and sound, checks, extras
        h = HermitianData(g, metric, jm)
        verdict = lck_verdict(h)
        checks.extend(verdict.certificate)
        extras["is_kahler"] = verdict.is_kahler
        extras["is_lck"] = verdict.is_lck
        extras["is_vaisman"] = verdict.is_vaisman
        extras["lee_form"] = _fractions(
            [verdict.lee_form.value((i,)) for i in range(n)]
        )
        if structure == "lck":
            return verdict.is_lck, checks, extras
        spectrum = spectrum_all_imaginary(g, samples=samples, seed=seed)
        checks.append(
            Check(
                "spectrum-imaginary-sampled",
                spectrum.all_imaginary,
                None
                if spectrum.witness is None
                else f"ad_x has a non-imaginary eigenvalue at "
                f"x = ({', '.join(_fractions(spectrum.witness))})",
            )
        )
        return verdict.is_vaisman and spectrum.all_imaginary, checks, extras

    if structure == "kahler-flat":
        jm = _need(f, "j", structure)
        flat = is_flat(g, Metric(gram)) if sound else None
        checks.append(
            Check(
                "metric-flat",
                bool(flat),
                None
                if flat
                else "skipped"
                if flat is None
                else f"curvature witness at basis triple {flat.witness}",
            )
        )
        square_gap = jm * jm + Matrix.identity(n)
        squares = square_gap.is_zero()
        checks.append(
            Check("squares-to-minus-identity", squares, None if squares else "J² ≠ −I")
        )
        compat_gap = jm.transpose() * gram * jm - gram
        compat = compat_gap.is_zero()
        checks.append(
            Check("metric-compatible", compat, None if compat else "JᵀGJ ≠ G")
        )
        if sound and flat and squares and compat:
            parallel = kahler_flat_check(g, Metric(gram), jm)
            checks.append(
                Check("j-parallel", parallel, None if parallel else "∇J ≠ J∇")
            )
        else:
            checks.append(Check("j-parallel", False, "skipped"))
        return all(c.passed for c in checks), checks, extras

    if structure in ("sasakian", "cokahler"):
        phi = _need(f, "phi", structure)
        xi = _need(f, "xi", structure)
        eta = _need(f, "eta", structure)
        if n % 2 == 0:
            raise CliError(
                f'"{structure}" needs an odd-dimensional algebra, got dim {n}'
            )
        if not sound:
            return False, checks, extras
        try:
            acs = AlmostContactStructure(g, Metric(gram), phi, xi, eta)
        except ValueError as exc:
            checks.append(Check("almost-contact-axioms", False, str(exc)))
            return False, checks, extras
        checks.append(Check("almost-contact-axioms", True, None))
        verdict = contact_verdict(acs)
        checks.extend(verdict.certificate)
        extras["is_normal"] = verdict.is_normal
        extras["is_sasakian"] = verdict.is_sasakian_standard
        extras["is_cokahler"] = verdict.is_cokahler
        target = (
            verdict.is_sasakian_standard
            if structure == "sasakian"
            else verdict.is_cokahler
        )
        return target, checks, extras

    if structure == "lsa":
        product = _need(f, "product", structure)
        if not checks[0].passed:
            return False, checks, extras
        try:
            p = LsaProduct(g, product)
        except ValueError as exc:
            checks.append(Check("left-symmetric-product", False, str(exc)))
            return False, checks, extras
        checks.append(Check("left-symmetric-product", True, None))
        completeness = lsa_completeness(p, samples=samples, seed=seed)
        checks.append(
            Check(
                "complete-sampled",
                completeness.complete,
                None
                if completeness.witness is None
                else f"det(I + ρ(x)) = 0 at "
                f"x = ({', '.join(_fractions(completeness.witness))})",
            )
        )
        extras["nilpotent_certificate"] = completeness.nilpotent_certificate
        extras["universal_determinant"] = completeness.universal
        return completeness.complete, checks, extras

    raise CliError(f"unknown structure {structure!r}")


def _cmd_verify(ns: argparse.Namespace, argv: Sequence[str]) -> int:
    f, info = _load_algebra(ns.file)
    verdict, checks, extras = _verify_structure(
        ns.structure, f, seed=ns.seed, samples=ns.samples
    )
    results: dict[str, Any] = {
        "structure": ns.structure,
        "verdict": verdict,
        "certificate": _certificate(checks),
    }
    results.update(extras)
    _emit(ns, _report(ns, argv, input_info=info, results=results))
    return OK if verdict else FALSE


# ---------------------------------------------------------------------------
# construct


def _beta_form(f: AlgebraFile, which: str, purpose: str) -> KForm:
    if which == "zero":
        return KForm(f.algebra.dim, 2, {})
    jm = f.j
    if jm is None:
        raise CliError(f'--beta omega needs the key "J" in the {purpose} file')
    try:
        return fundamental_form(Metric(_gram(f)), ComplexStructure(jm))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _parse_package(f: AlgebraFile, path: str) -> KahlerFlatPackage:
    jm = f.j
    d = f.derivation
    if jm is None or d is None:
        raise CliError(f'{path}: a flat Kähler package needs keys "J" and "derivation"')
    try:
        return KahlerFlatPackage(f.algebra.require_valid(), Metric(_gram(f)), jm, d)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _hermitian_from_file(f: AlgebraFile, path: str) -> HermitianData:
    jm = f.j
    if jm is None:
        raise CliError(f'{path}: needs the key "J"')
    try:
        return HermitianData(f.algebra.require_valid(), Metric(_gram(f)), jm)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _tower_arguments(ns: argparse.Namespace) -> tuple[int, int, list[int], list[int]]:
    a = _int_list(ns.speeds, "-a")
    alpha = _int_list(ns.alpha, "--alpha")
    if not alpha:
        raise CliError("the tower needs --alpha with at least one outer speed")
    mcount = len(a) if ns.mcount is None else ns.mcount
    level = len(alpha) - len(a) if ns.level is None else ns.level
    return level, mcount, a, alpha


def _construct_source(ns: argparse.Namespace, kind: str) -> tuple[AlgebraFile, dict[str, str]]:
    if ns.source is None:
        raise CliError(f"construct {kind} needs --from FILE")
    return _load_algebra(ns.source)


def _cmd_construct(ns: argparse.Namespace, argv: Sequence[str]) -> int:
    kind = ns.kind
    info: dict[str, str] | None = None
    results: dict[str, Any] = {"kind": kind, "output": ns.output}

    if kind == "central-ext":
        f, info = _construct_source(ns, kind)
        try:
            f.algebra.require_valid()
            ext = central_extension(f.algebra, _beta_form(f, ns.beta, "source"))
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        payload = algebra_payload(ext)
        results.update({"dim": ext.dim, "beta": ns.beta})

    elif kind in ("double-ext", "vaisman"):
        f, info = _construct_source(ns, kind)
        pkg = _parse_package(f, ns.source)
        h = construct_vaisman(pkg)
        if kind == "vaisman":
            payload = algebra_payload(
                h.algebra, metric=h.metric.gram, j=h.j.matrix
            )
        else:
            payload = algebra_payload(h.algebra)
        results.update({"dim": h.algebra.dim})

    elif kind == "cokahler":
        f, info = _construct_source(ns, kind)
        h = _hermitian_from_file(f, ns.source)
        try:
            red = vaisman_to_cokahler(h)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        acs = red.structure
        m = acs.dim
        payload = algebra_payload(
            acs.algebra,
            metric=acs.metric.gram,
            phi=acs.phi,
            xi=acs.xi,
            eta=[acs.eta.value((i,)) for i in range(m)],
        )
        results.update({"dim": m})

    elif kind == "lsa":
        f, info = _construct_source(ns, kind)
        try:
            f.algebra.require_valid()
            p = lsa_from_central_extension(
                f.algebra, Metric(_gram(f)), _beta_form(f, ns.beta, "source")
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        payload = algebra_payload(p.algebra, product=p.table)
        results.update({"dim": p.algebra.dim, "beta": ns.beta})

    elif kind == "oscillator":
        speeds = _rat_list(ns.speeds, "-a")
        try:
            params = OscillatorParams(speeds)
            h = oscillator_algebra(params)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        payload = algebra_payload(h.algebra, metric=h.metric.gram, j=h.j.matrix)
        results.update({"dim": h.algebra.dim, "speeds": list(params.a)})

    elif kind == "tower":
        if ns.k is None or ns.turn_j is None or ns.turn_i is None:
            raise CliError("construct tower needs -k, --turn-j, and --turn-i")
        level, mcount, a, alpha = _tower_arguments(ns)
        try:
            lp = lattice_presentation_tower(
                level, mcount, a, alpha, ns.k, ns.turn_j, ns.turn_i
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        payload = presentation_payload(lp)
        results.update({"generators": list(lp.labels)})

    elif kind == "family":
        if ns.name is None:
            raise CliError("construct family needs --name")
        try:
            tag = FamilyTag(ns.name, ns.ratio)
            h = build_family(tag)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        payload = algebra_payload(h.algebra, metric=h.metric.gram, j=h.j.matrix)
        results.update({"dim": h.algebra.dim, "family": str(tag)})

    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown construct kind {kind!r}")

    _write_json(ns.output, payload)
    _emit(ns, _report(ns, argv, input_info=info, results=results))
    return OK


# ---------------------------------------------------------------------------
# reduce / classify


def _cmd_reduce(ns: argparse.Namespace, argv: Sequence[str]) -> int:
    f, info = _load_algebra(ns.file)
    verdict, checks, extras = _verify_structure(
        "vaisman", f, seed=ns.seed, samples=ns.samples
    )
    results: dict[str, Any] = {
        "verdict": verdict,
        "certificate": _certificate(checks),
    }
    if not verdict:
        _emit(ns, _report(ns, argv, input_info=info, results=results))
        return FALSE
    h = HermitianData(f.algebra, Metric(_gram(f)), f.j)
    try:
        red = reduce_vaisman(h)
    except ValueError as exc:
        results["verdict"] = False
        results["error"] = str(exc)
        _emit(ns, _report(ns, argv, input_info=info, results=results))
        return FALSE
    pkg = red.package
    results.update(
        {
            "core_dim": pkg.algebra.dim,
            "metric_scale": format_rational(red.scale),
            "lee_dual": _fractions(red.lee_dual),
            "anti_lee": _fractions(red.anti_lee),
        }
    )
    results.update(extras)
    if ns.output:
        _write_json(
            ns.output,
            algebra_payload(
                pkg.algebra,
                metric=pkg.metric.gram,
                j=pkg.j.matrix,
                derivation=pkg.derivation,
            ),
        )
        results["output"] = ns.output
    _emit(ns, _report(ns, argv, input_info=info, results=results))
    return OK


def _invariant_payload(inv: IsoInvariant) -> dict[str, Any]:
    return {
        "dim": inv.dim,
        "nilradical_dim": inv.nilradical_dim,
        "nilradical_profile": list(inv.nilradical_profile),
        "center_dim": inv.center_dim,
        "transverse_speeds": None
        if inv.transverse_speeds is None
        else [str(s) for s in inv.transverse_speeds],
    }


def _cmd_classify(ns: argparse.Namespace, argv: Sequence[str]) -> int:
    f, info = _load_algebra(ns.file)
    res = f.algebra.validate()
    if not res.ok:
        raise CliError(f"{ns.file}: not a Lie algebra ({res.message})")
    if ns.dim is not None and ns.dim != f.algebra.dim:
        raise CliError(
            f"--dim {ns.dim} was requested but the file has dimension {f.algebra.dim}"
        )
    tag, inv = classify_catalogue(f.algebra)
    results = {
        "family": None if tag is None else str(tag),
        "outside_catalogue": tag is None,
        "invariant": _invariant_payload(inv),
    }
    _emit(ns, _report(ns, argv, input_info=info, results=results))
    return OK if tag is not None else FALSE


# ---------------------------------------------------------------------------
# lattice


def _cmd_lattice_h1(ns: argparse.Namespace, argv: Sequence[str]) -> int:
    info: dict[str, str] | None = None
    try:
        if ns.source is not None:
            payload, info = _read_json(ns.source)
            try:
                lp = parse_presentation_payload(payload)
            except FormatError as exc:
                raise CliError(f"{ns.source}: {exc}") from exc
            family = "file"
        elif ns.family == "heisenberg":
            if ns.pairs is None or ns.k is None:
                raise CliError("heisenberg homology needs -n and -k")
            lp = heisenberg_lattice_presentation(ns.pairs, ns.k)
            family = ns.family
        elif ns.family == "oscillator":
            if not ns.speeds or ns.k is None or ns.turn is None:
                raise CliError("oscillator homology needs -a, -k, and --turn")
            params = OscillatorParams(_rat_list(ns.speeds, "-a"))
            lp = lattice_presentation_oscillator(params, ns.k, ns.turn)
            family = ns.family
        elif ns.family == "tower":
            if ns.k is None or ns.turn_j is None or ns.turn_i is None:
                raise CliError("tower homology needs -k, --turn-j, and --turn-i")
            level, mcount, a, alpha = _tower_arguments(ns)
            lp = lattice_presentation_tower(
                level, mcount, a, alpha, ns.k, ns.turn_j, ns.turn_i
            )
            family = ns.family
        else:
            raise CliError("lattice h1 needs --family or --from FILE")
    except ValueError as exc:
        raise CliError(str(exc)) from exc

    group = abelianization(lp)
    if ns.source is None and ns.family == "oscillator":
        predicted = oscillator_h1_closed_form(params, ns.k, ns.turn)
        assert group == predicted, "closed form disagrees with the abelianization"
    results = {
        "family": family,
        "rank": group.rank,
        "torsion": list(group.torsion),
        "group": str(group),
    }
    _emit(ns, _report(ns, argv, input_info=info, results=results))
    return OK


_TURNS = {"half": HALF_TURN, "quarter": QUARTER_TURN}


def _render_table(turn: str, k: int, rows: Sequence[tuple[str, Any, int]]) -> str:
    title = f"H1 of the six-dimensional two-plane quotients — {turn} turn, k = {k}"
    header = ("product residue class", "first homology", "b1")
    body = [(label, str(group), str(b1)) for label, group, b1 in rows]
    widths = [
        max(len(line[c]) for line in [header, *body]) for c in range(3)
    ]
    out = [title, ""]
    out.append("  ".join(header[c].ljust(widths[c]) for c in range(3)).rstrip())
    out.append("  ".join("-" * widths[c] for c in range(3)))
    for line in body:
        out.append("  ".join(line[c].ljust(widths[c]) for c in range(3)).rstrip())
    return "\n".join(out) + "\n"


def _cmd_lattice_table(ns: argparse.Namespace, argv: Sequence[str]) -> int:
    try:
        rows = two_block_h1_table(_TURNS[ns.turn], ns.k)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if ns.json:
        results = {
            "turn": ns.turn,
            "k": ns.k,
            "rows": [
                {
                    "class": label,
                    "rank": group.rank,
                    "torsion": list(group.torsion),
                    "b1": b1,
                }
                for label, group, b1 in rows
            ],
        }
        _emit(
            ns,
            _report(
                ns, argv, input_info=None, results=results, provenance="published table"
            ),
        )
    else:
        sys.stdout.write(_render_table(ns.turn, ns.k, rows))
    return OK


# ---------------------------------------------------------------------------
# parser


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--seed", type=int, default=0, help="seed for every sampled check (default 0)"
    )
    p.add_argument(
        "--samples",
        type=int,
        default=100,
        help="sample count for spectrum/completeness checks (default 100)",
    )
    p.add_argument(
        "--tolerance",
        default="0",
        help="accepted for adapted-basis workflows and echoed in the report; "
        "all arithmetic here is exact, so any value behaves like 0",
    )
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json", action="store_true", help="compact single-line JSON output"
    )
    fmt.add_argument(
        "--pretty", action="store_true", help="indented JSON output (the default)"
    )
    return p


def _add_tower_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("-l", dest="level", type=int, default=None,
                   help="outer-only plane pairs (default: len(alpha) - len(a))")
    p.add_argument("-m", dest="mcount", type=int, default=None,
                   help="inner plane pairs (default: len(a))")
    p.add_argument("--alpha", help="outer rotation speeds, comma-separated")
    p.add_argument("--turn-j", dest="turn_j", type=int, default=None,
                   help="inner quarter-turn count")
    p.add_argument("--turn-i", dest="turn_i", type=int, default=None,
                   help="outer quarter-turn count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solvgeom",
        description="Exact verdicts, constructions, and homology for "
        "metric Lie algebras described by JSON files.",
    )
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser(
        "verify", parents=[common], help="decide a structure verdict for a file"
    )
    v.add_argument("--structure", required=True, choices=STRUCTURES)
    v.add_argument("file")
    v.set_defaults(handler=_cmd_verify)

    c = sub.add_parser(
        "construct", parents=[common], help="build a structure and write it to a file"
    )
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--from", dest="source", help="input file for file-based kinds")
    c.add_argument("-a", dest="speeds", help="rotation speeds, comma-separated")
    c.add_argument("-k", dest="k", type=int, default=None, help="central pairing exponent")
    c.add_argument("--beta", choices=("omega", "zero"), default="omega",
                   help="2-cocycle for central-ext/lsa (default: the fundamental form)")
    c.add_argument("--name", choices=FAMILY_NAMES, help="catalogue family name")
    c.add_argument("-r", dest="ratio", default=None, help="family speed ratio in [0, 1]")
    _add_tower_options(c)
    c.add_argument("-o", "--output", required=True, help="file to write")
    c.set_defaults(handler=_cmd_construct)

    r = sub.add_parser(
        "reduce",
        parents=[common],
        help="split a Vaisman file over its Lee plane into a flat Kähler package",
    )
    r.add_argument("file")
    r.add_argument("-o", "--output", default=None, help="write the package here")
    r.set_defaults(handler=_cmd_reduce)

    cl = sub.add_parser(
        "classify", parents=[common], help="place a file in the low-dimensional catalogue"
    )
    cl.add_argument("--dim", type=int, default=None, help="assert the expected dimension")
    cl.add_argument("file")
    cl.set_defaults(handler=_cmd_classify)

    lat = sub.add_parser("lattice", help="first homology of cocompact lattices")
    latsub = lat.add_subparsers(dest="lattice_command", required=True)

    h1 = latsub.add_parser(
        "h1", parents=[common], help="H1 of one lattice, from parameters or a file"
    )
    h1.add_argument("--family", choices=("heisenberg", "oscillator", "tower"))
    h1.add_argument("--from", dest="source", help="lattice presentation file")
    h1.add_argument("-n", dest="pairs", type=int, default=None,
                    help="plane pairs (heisenberg)")
    h1.add_argument("-a", dest="speeds", help="rotation speeds, comma-separated")
    h1.add_argument("-k", dest="k", type=int, default=None, help="central pairing exponent")
    h1.add_argument("--turn", type=int, default=None,
                    help="quarter-turn count (oscillator)")
    _add_tower_options(h1)
    h1.set_defaults(handler=_cmd_lattice_h1)

    tb = latsub.add_parser(
        "table", parents=[common], help="render a two-plane residue table"
    )
    tb.add_argument("--turn", required=True, choices=tuple(_TURNS))
    tb.add_argument("-k", dest="k", type=int, default=1)
    tb.set_defaults(handler=_cmd_lattice_table)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else USAGE
    tolerance = getattr(ns, "tolerance", "0")
    try:
        if rat(tolerance) < 0:
            raise ValueError("negative")
    except (ValueError, TypeError):
        print(
            f"solvgeom: --tolerance must be a nonnegative exact rational, "
            f"got {tolerance!r}",
            file=sys.stderr,
        )
        return USAGE
    try:
        return ns.handler(ns, args)
    except CliError as exc:
        print(f"solvgeom: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
