"""Command-line interface: hhglue <command> FILE [options]."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .bar import DEFAULT_BUDGET as BAR_BUDGET, BarComplex, oracle_hh1_derivations
from .batch import run_batch
from .cibils import CibilsComplex, verify_highhoch_gluing
from .generators import CONFIGS
from .gluing import (SUITES, GluingAnalysis, GluingError, check_assumption, glue,
                     ideal_generator_delta, pi1_rank, run_suites, special_sets, split_vertex)
from .linalg import Field
from .presentation import (BoundQuiver, BudgetExceeded, ParseError, SemanticError, blocks,
                           enumerate_basis, normalize, parse_presentation, serialize, validate)
from .strametz import (build_cmon, center, graded_decomposition, hh1, l0_decomposition,
                       lie_structure, p_power, sanchez_flores)

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3, 4

REPORT_SCHEMA = {
    "type": "object",
    "required": ["tool", "version", "command", "input_digest", "exit_code", "results", "warnings"],
    "properties": {
        "tool": {"const": "hhglue"},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "input_digest": {"type": ["string", "null"]},
        "exit_code": {"type": "integer", "minimum": 0, "maximum": 4},
        "results": {"type": "object"},
        "warnings": {"type": "array", "items": {"type": "string"}},
        "error": {"type": "string"},
        "timings": {"type": "object"},
    },
    "additionalProperties": False,
}


class UsageError(Exception):
    pass


class Report:
    def __init__(self, command: str):
        self.command = command
        self.digest: Optional[str] = None
        self.results: dict = {}
        self.warnings: list[str] = []
        self.error: Optional[str] = None
        self.timings: dict[str, float] = {}
        self.exit_code = EXIT_OK

    def as_dict(self, timings: bool) -> dict:
        d = {"tool": "hhglue", "version": __version__, "command": self.command,
             "input_digest": self.digest, "exit_code": self.exit_code,
             "results": self.results, "warnings": self.warnings}
        if self.error is not None:
            d["error"] = self.error
        if timings:
            d["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return d


def _plain(x):
    """JSON-friendly copy: fractions become strings, tuples become lists."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _human(x, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(x, dict):
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_human(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v if v != [] and v != {} else '-'}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)):
                sub = _human(v, indent + 1)
                out.append(f"{pad}- {sub[0].strip()}" if sub else f"{pad}-")
                out.extend(sub[1:])
            else:
                out.append(f"{pad}- {v}")
    else:
        out.append(f"{pad}{x}")
    return out


def _load(path: str, report: Report, field: Optional[str], do_normalize: bool = False) -> BoundQuiver:
    with open(path, "rb") as fh:
        raw = fh.read()
    report.digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    bq = parse_presentation(raw.decode("utf-8"))
    if field:
        try:
            bq = bq.with_field(Field.parse(field))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if do_normalize:
        bq = normalize(bq)
    return bq


def _require_valid(bq: BoundQuiver) -> None:
    v = validate(bq)
    if not v.ok:
        if not v.finite:
            raise SemanticError(f"algebra is infinite-dimensional, pumpable cycle {v.witness}")
        raise SemanticError("relation set is not minimal: " +
                            ", ".join(f"{a} divides {b}" for a, b in v.minimality_violations))


def _pair(text: str, what: str) -> list[str]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise UsageError(f"{what} expects two comma separated names")
    return parts


def _names(text: Optional[str]) -> list[str]:
    return [p.strip() for p in (text or "").split(",") if p.strip()]


def _degrees(args) -> list[int]:
    if args.all_upto is not None:
        return list(range(args.all_upto + 1))
    if args.degree is not None:
        return [args.degree]
    return [0, 1]


# commands ---------------------------------------------------------------------------

def cmd_validate(args, rep: Report) -> int:
    bq = _load(args.file, rep, args.field, args.normalize)
    v = validate(bq)
    rep.results = v.as_dict()
    if v.isolated:
        rep.warnings.append("isolated vertices: " + ", ".join(v.isolated))
    if not v.ok:
        rep.error = ("infinite-dimensional, pumpable cycle " + v.witness) if not v.finite \
            else "relation set is not minimal"
        return EXIT_SEMANTIC
    return EXIT_OK


def cmd_basis(args, rep: Report) -> int:
    bq = _load(args.file, rep, args.field, args.normalize)
    _require_valid(bq)
    basis = enumerate_basis(bq, budget=args.budget)
    by_len: dict[str, list[str]] = {}
    for p in basis:
        by_len.setdefault(str(len(p)), []).append(bq.render(p, args.right_to_left))
    rep.results = {"dim": len(basis), "by_length": by_len}
    return EXIT_OK


def _lie_data(h, field: Field) -> dict:
    L = lie_structure(h)
    labels = h.labels()
    brackets = []
    for (i, j), v in sorted(L.constants.items()):
        if i < j:
            terms = " + ".join(f"{_plain(c)}*[{k}]" for k, c in sorted(v.items()))
            brackets.append(f"[{i},{j}] = {terms}")
    grading = graded_decomposition(h)
    data = {
        "basis": [f"[{k}] {s} (degree {h.rep_degree(k)})" for k, s in enumerate(labels)],
        "brackets": brackets,
        "grading": grading.as_dict(),
        "L1": [labels[k] for k in grading.reps.get(1, [])],
        "profile": L.profile().as_dict(),
        "L0": l0_decomposition(h).as_dict(),
    }
    if field.characteristic:
        powers = []
        for k in range(h.dim):
            v = p_power(h, {k: field.one})
            terms = " + ".join(f"{_plain(c)}*[{j}]" for j, c in sorted(v.items())) or "0"
            powers.append(f"[{k}]^[p] = {terms}")
        data["p_powers"] = powers
    return data


def cmd_hh(args, rep: Report) -> int:
    bq = _load(args.file, rep, args.field, args.normalize)
    _require_valid(bq)
    degrees = _degrees(args)
    rsz = bq.is_radical_square_zero()
    high = [n for n in degrees if n >= 2]
    if high and not rsz and not args.oracle:
        raise UsageError("degrees >= 2 need a radical square zero algebra or --oracle")
    t = time.perf_counter()
    cm = build_cmon(bq)
    summary, h = hh1(cm)
    z = center(cm)
    rep.timings["cmon"] = time.perf_counter() - t
    dims: dict[str, int] = {"0": z.dim}
    res: dict = {"dims": dims, "radical_square_zero": rsz,
                 "HH0": {"dim": z.dim, "basis": z.elements}}
    if any(n >= 1 for n in degrees) or not args.degree:
        dims["1"] = h.dim
        res["HH1"] = dict(summary.as_dict(), basis=h.labels())
        if args.lie:
            t = time.perf_counter()
            res["HH1"]["lie"] = _lie_data(h, bq.field)
            rep.timings["lie"] = time.perf_counter() - t
    if high:
        t = time.perf_counter()
        if rsz:
            cc = CibilsComplex(bq, budget=args.budget)
            res["cibils"] = {}
            for n in high:
                d = cc.hh_dim(n)
                formula = cc.formula(n)
                dims[str(n)] = d
                res["cibils"][str(n)] = {"dim": d, "closed_formula": formula,
                                         "square_zero": cc.check_square_zero(n)}
                if formula is not None and formula != d:
                    rep.error = f"closed formula disagrees in degree {n}"
                    return EXIT_MISMATCH
        else:
            bc = BarComplex(bq, budget=args.budget)
            for n in high:
                dims[str(n)] = bc.hh_dim(n)
        rep.timings["higher"] = time.perf_counter() - t
    if args.oracle:
        t = time.perf_counter()
        bc = BarComplex(bq, budget=args.budget)
        odims = {str(n): bc.hh_dim(n) for n in degrees}
        res["oracle"] = odims
        rep.timings["oracle"] = time.perf_counter() - t
        if any(dims.get(k, v) != v for k, v in odims.items()):
            rep.error = "bar oracle disagrees"
            rep.results = res
            return EXIT_MISMATCH
    rep.results = res
    return EXIT_OK


def _endpoints(args, bq: BoundQuiver) -> tuple[str, str]:
    if not args.at:
        raise UsageError("--at v1,v2 is required")
    e1, en = _pair(args.at, "--at")
    return e1, en


def cmd_glue(args, rep: Report) -> int:
    A = _load(args.file, rep, args.field, args.normalize)
    _require_valid(A)
    e1, en = _endpoints(args, A)
    g = glue(A, e1, en, args.name)
    an = GluingAnalysis(g)
    assumption = check_assumption(g)
    res = {
        "gluing": g.summary(),
        "dim_A": len(an.basis_a),
        "dim_B": len(an.basis_b),
        "assumption": assumption.as_dict(),
        "special": special_sets(an),
        "hh1": {"A": an.h_a.dim, "B": an.h_b.dim},
    }
    if not assumption.ok:
        rep.warnings.append("assumption on loops at the glued vertices fails")
    rep.warnings.extend(assumption.exceptional)
    text = serialize(g.B)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        res["written"] = args.out
    else:
        res["presentation"] = text.splitlines()
    rep.results = res
    return EXIT_OK


def cmd_split(args, rep: Report) -> int:
    B = _load(args.file, rep, args.field, args.normalize)
    _require_valid(B)
    if not (args.vertex and args.side1 and args.side2 and args.names):
        raise UsageError("split needs --vertex, --side1, --side2 and --names")
    names = _pair(args.names, "--names")
    A = split_vertex(B, args.vertex, _names(args.side1), _names(args.side2), (names[0], names[1]))
    _require_valid(A)
    text = serialize(A)
    res = {"blocks": len(blocks(A)), "dim": len(enumerate_basis(A))}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        res["written"] = args.out
    else:
        res["presentation"] = text.splitlines()
    rep.results = res
    return EXIT_OK


def _suites(text: str) -> tuple[list[str], bool]:
    names = _names(text) or ["all"]
    if "all" in names:
        return list(SUITES), True
    unknown = [n for n in names if n not in SUITES and n not in ("highdeg", "ideal")]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    return [n for n in names if n in SUITES] + [n for n in names if n == "ideal"], "highdeg" in names


def cmd_verify(args, rep: Report) -> int:
    suites, highdeg = _suites(args.suite)
    if args.random:
        plain = [s for s in suites if s in SUITES]
        field = Field.parse(args.field) if args.field else Field(0)
        res = run_batch(args.random, args.seed, CONFIGS, plain, args.max_degree if highdeg else 1,
                        args.jobs, field.characteristic)
        rep.results = {"batches": [r.as_dict() for r in res]}
        return EXIT_OK if all(r.ok for r in res) else EXIT_MISMATCH
    if not args.file:
        raise UsageError("verify needs FILE or --random N")
    A = _load(args.file, rep, args.field, args.normalize)
    _require_valid(A)
    e1, en = _endpoints(args, A)
    g = glue(A, e1, en)
    an = GluingAnalysis(g)
    assumption = check_assumption(g)
    reports = run_suites(an, [s for s in suites if s in SUITES])
    if "ideal" in suites:
        reports.append(ideal_generator_delta(an))
    if highdeg:
        if not (A.is_radical_square_zero() and g.B.is_radical_square_zero()):
            rep.warnings.append("highdeg suite skipped: not radical square zero")
        else:
            reports += [verify_highhoch_gluing(g, n) for n in range(2, args.max_degree + 1)]
    if not assumption.ok:
        rep.warnings.append("assumption fails: identities reported as advisory")
    rep.warnings.extend(assumption.exceptional)
    rep.results = {"gluing": g.summary(), "assumption": assumption.as_dict(),
                   "suites": [r.as_dict() for r in reports]}
    failed = [r.suite for r in reports if not r.ok]
    if failed:
        rep.error = "identity mismatch in " + ", ".join(failed)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_sf_profile(args, rep: Report) -> int:
    bq = _load(args.file, rep, args.field, args.normalize)
    _require_valid(bq)
    if not bq.is_radical_square_zero():
        raise SemanticError("sf-profile needs a radical square zero algebra")
    if bq.field.characteristic:
        raise SemanticError("sf-profile needs characteristic 0")
    out = []
    ok = True
    for b in blocks(bq):
        pred = sanchez_flores(b)
        _, h = hh1(build_cmon(b))
        prof = lie_structure(h).profile()
        match = pred.dim == h.dim and pred.profile == prof
        ok &= match
        out.append({"vertices": list(b.quiver.vertices), "predicted": pred.as_dict(),
                    "computed": {"dim": h.dim, "profile": prof.as_dict()}, "match": match})
    rep.results = {"blocks": out}
    if not ok:
        rep.error = "closed formula disagrees with the computed profile"
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_pi1_rank(args, rep: Report) -> int:
    bq = _load(args.file, rep, args.field, args.normalize)
    _require_valid(bq)
    res = pi1_rank(bq)
    _, h = hh1(build_cmon(bq))
    res["rank_from_im_delta0"] = bq.quiver.n_arrows - h.im_deg0.dim
    rep.results = res
    if res["rank_from_im_delta0"] != res["betti"]:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_oracle(args, rep: Report) -> int:
    bq = _load(args.file, rep, args.field, args.normalize)
    _require_valid(bq)
    bc = BarComplex(bq, budget=args.budget)
    res: dict = {"dims": {}, "square_zero": {}}
    for n in _degrees(args):
        res["dims"][str(n)] = bc.hh_dim(n)
        res["square_zero"][str(n)] = True
    if args.derivations:
        res["derivations"] = oracle_hh1_derivations(bq).as_dict()
    rep.results = res
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate, "basis": cmd_basis, "hh": cmd_hh, "glue": cmd_glue,
    "split": cmd_split, "verify": cmd_verify, "sf-profile": cmd_sf_profile,
    "pi1-rank": cmd_pi1_rank, "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hhglue", description="HH^0/HH^1 of monomial algebras and gluing idempotents")
    p.add_argument("--version", action="version", version=f"hhglue {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--field", help="override the field: Q or F<p>")
    common.add_argument("--normalize", action="store_true", help="drop non-minimal relations")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common.add_argument("--budget", type=int, default=BAR_BUDGET, help="size cap for enumerations")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, file_required: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file_required:
            sp.add_argument("file")
        else:
            sp.add_argument("file", nargs="?")
        return sp

    add("validate", "parse and validate a presentation")
    sp = add("basis", "list the path basis")
    sp.add_argument("--right-to-left", action="store_true", help="right-to-left path notation")
    for name, help_ in (("hh", "Hochschild cohomology dimensions"), ("oracle", "bar complex oracle")):
        sp = add(name, help_)
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--degree", type=int)
        g.add_argument("--all-upto", type=int)
        if name == "hh":
            sp.add_argument("--lie", action="store_true", help="structure constants, grading, L0, profile")
            sp.add_argument("--oracle", action="store_true", help="cross-check with the bar complex")
        else:
            sp.add_argument("--derivations", action="store_true", help="also count derivations directly")
    sp = add("glue", "glue two vertices")
    sp.add_argument("--at", help="v1,v2")
    sp.add_argument("--out")
    sp.add_argument("--name", default="f1", help="name of the glued vertex")
    sp = add("split", "split a vertex in two")
    sp.add_argument("--vertex")
    sp.add_argument("--side1", help="arrows attached to the first new vertex")
    sp.add_argument("--side2", help="arrows attached to the second new vertex")
    sp.add_argument("--names", help="new vertex names n1,n2")
    sp.add_argument("--out")
    sp = add("verify", "check comparison identities for a gluing", file_required=False)
    sp.add_argument("--at", help="v1,v2")
    sp.add_argument("--suite", default="all",
                    help="comma list of im0,ker1,hh1,diagram,center,pi1,highdeg,ideal or all")
    sp.add_argument("--max-degree", type=int, default=4, help="top degree for the highdeg suite")
    sp.add_argument("--random", type=int, help="random instances per configuration instead of FILE")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    add("sf-profile", "closed formula vs computed HH^1 profile per block")
    add("pi1-rank", "first Betti number and its HH^1 expression")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and "highdeg" in (args.suite or "") and args.max_degree < 2:
        parser.error("--max-degree must be at least 2")
    rep = Report(args.command)
    start = time.perf_counter()
    try:
        rep.exit_code = COMMANDS[args.command](args, rep)
    except ParseError as exc:
        rep.error, rep.exit_code = str(exc), EXIT_PARSE
    except UsageError as exc:
        rep.error, rep.exit_code = f"usage: {exc}", EXIT_SEMANTIC
    except (SemanticError, GluingError) as exc:
        rep.error, rep.exit_code = str(exc), EXIT_SEMANTIC
    except BudgetExceeded as exc:
        rep.error, rep.exit_code = str(exc), EXIT_BUDGET
    except OSError as exc:
        rep.error, rep.exit_code = str(exc), EXIT_PARSE
    rep.timings["total"] = time.perf_counter() - start
    doc = _plain(rep.as_dict(args.timings))
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        body = {k: v for k, v in doc.items() if k not in ("tool", "version", "input_digest")}
        print("\n".join(_human(body)))
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
