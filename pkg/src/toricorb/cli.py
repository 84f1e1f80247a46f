"""Command line front end: ``toricorb <command> FILE [options]``.

Exit codes: 0 success, 1 validation failure or no isomorphism, 2 malformed
input or usage error, 3 internal inconsistency in the reduction checks.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import delzant
from .fileio import FileFormatError, load_facets, read_polytope, to_document
from .invariants import orbi_weights, singular_locus_report
from .lattice import format_fraction
from .morse import NonGenericDirection, betti_numbers
from .polytope import PolytopeError, face_lattice, fmt_point
from .weighted import WeightedPolytope, isomorphic, validate

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _q(x) -> str:
    return format_fraction(Fraction(x))


def _qs(v) -> list[str]:
    return [_q(x) for x in v]


# ---------------------------------------------------------------------------
# report sections (JSON-ready, exact)

def validation_section(report) -> dict:
    return {"ok": report.ok, "checks": dict(report.checks), "messages": dict(report.messages)}


def faces_section(W: WeightedPolytope) -> list[dict]:
    rep = singular_locus_report(W)
    return [
        {
            "active": list(r.face.active),
            "dim": r.face.dim,
            "vertices": list(r.face.vertex_indices),
            "group": list(r.group.invariant_factors),
            "group_name": str(r.group),
            "order": r.group.order,
            "stabilizer_rank": r.stabilizer_rank,
        }
        for r in rep.faces
    ]


def betti_section(W: WeightedPolytope, xi=None) -> dict:
    prof = betti_numbers(W, xi)
    return {"b": list(prof.b), "xi": list(prof.xi_used)}


def delzant_section(W: WeightedPolytope) -> dict:
    D = delzant.build(W)
    return {
        "A": D.A.to_rows(),
        "kernel_basis": D.kernel_basis.to_rows(),
        "component_group": list(D.component_group.invariant_factors),
        "component_group_name": str(D.component_group),
        "level": _qs(D.level),
        "eta_scaled": _qs(D.eta_scaled),
        "recompute_image": delzant.recompute_image(D, W),
        "vertex_preimages": [
            {"vertex": v, "squared_moduli": _qs(delzant.vertex_preimage(D, W, v).squared_moduli)}
            for v in range(len(W.vertices))
        ],
    }


def verify_section(W: WeightedPolytope, samples: int, seed: int, tol: float) -> dict:
    import numpy as np

    D = delzant.build(W)
    exact = delzant.recompute_image(D, W)
    back = 0.0
    for v, x in enumerate(W.vertices):
        pre = delzant.vertex_preimage(D, W, v)
        alpha = delzant.image_of(D, [float(s) for s in pre.squared_moduli])
        back = max(back, float(np.max(np.abs(alpha - np.array([float(c) for c in x])))))
    rep = delzant.sample_moment_image(D, W, samples, seed, tol)
    return {
        "recompute_image": exact,
        "samples": rep.count,
        "seed": rep.seed,
        "tol": rep.tol,
        "attempts": rep.attempts,
        "max_violation": rep.max_violation if rep.count else 0.0,
        "max_level_residual": rep.max_level_residual,
        "max_vertex_roundtrip_error": back,
        "passed": bool(exact and rep.passed and back <= tol),
    }


def full_report(W: WeightedPolytope, xi=None) -> dict:
    return {
        "input": to_document(W),
        "validation": validation_section(W.validate()),
        "vertices": [_qs(v) for v in W.vertices],
        "faces": faces_section(W),
        "smooth": singular_locus_report(W).smooth,
        "orbi_weights": [
            {"vertex": v, "weights": [_qs(a) for a in orbi_weights(W, v).weights]}
            for v in range(len(W.vertices))
        ],
        "betti": betti_section(W, xi),
        "delzant": delzant_section(W),
    }


# ---------------------------------------------------------------------------
# text rendering

def _faces_text(faces: list[dict], with_groups: bool) -> list[str]:
    out = [f"{'facets':<16}{'dim':>4}  {'vertices':<18}" + ("group" if with_groups else "")]
    for f in faces:
        act = "{" + ",".join(map(str, f["active"])) + "}"
        line = f"{act:<16}{f['dim']:>4}  {str(f['vertices']):<18}"
        if with_groups:
            line += f["group_name"]
        out.append(line.rstrip())
    return out


def _delzant_text(d: dict) -> list[str]:
    return [
        f"A = {d['A']}",
        f"kernel basis (columns) = {d['kernel_basis']}",
        f"pi0(K) = {d['component_group_name']}",
        f"level = [{', '.join(d['level'])}]",
        f"scaled offsets = [{', '.join(d['eta_scaled'])}]",
        f"recompute_image = {str(d['recompute_image']).lower()}",
    ] + [
        f"vertex {p['vertex']}: |z|^2 = [{', '.join(p['squared_moduli'])}]"
        for p in d["vertex_preimages"]
    ]


def _report_text(rep: dict) -> list[str]:
    lines = ["validation: " + ("pass" if rep["validation"]["ok"] else "FAIL")]
    lines.append("vertices:")
    lines += [f"  {i}: ({', '.join(v)})" for i, v in enumerate(rep["vertices"])]
    lines.append("faces:")
    lines += ["  " + s for s in _faces_text(rep["faces"], True)]
    lines.append("smooth (Delzant): " + ("yes" if rep["smooth"] else "no"))
    lines.append("orbi-weights:")
    for ow in rep["orbi_weights"]:
        lines.append(f"  vertex {ow['vertex']}: " + "  ".join(f"({', '.join(a)})" for a in ow["weights"]))
    lines.append(f"betti: b = {rep['betti']['b']} (xi = {rep['betti']['xi']})")
    lines.append("delzant:")
    lines += ["  " + s for s in _delzant_text(rep["delzant"])]
    return lines


# ---------------------------------------------------------------------------

def _parse_xi(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--xi expects comma-separated integers, got {text!r}") from None


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricorb", description="Invariants of labeled rational simple polytopes.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_, files=1):
        sp = sub.add_parser(name, help=help_)
        for k in range(files):
            sp.add_argument("FG"[k], metavar="FG"[k])
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    add("validate", "check the polytope data")
    add("faces", "list the face lattice")
    add("groups", "orbifold structure group of every face")
    add("betti", "Betti numbers").add_argument("--xi", default=None)
    add("isom", "decide isomorphism", files=2).add_argument("--group", choices=("sl", "gl"), default="sl")
    add("delzant", "emit the reduction recipe")
    v = add("verify", "exact and sampled checks of the reduction")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-9)
    add("report", "everything at once").add_argument("--xi", default=None)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage() + "toricorb: error: a command is required")
        return _dispatch(args, out)
    except UsageError as e:
        print(str(e), file=err)
        return EXIT_INPUT
    except (FileFormatError, PolytopeError, NonGenericDirection, OSError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    except delzant.ConstructionError as e:
        print(f"internal inconsistency: {e}", file=err)
        return EXIT_INTERNAL


def _emit(out, fmt: str, payload, text_lines: list[str]) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd == "validate":
        with open(args.F, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as e:
                raise FileFormatError(f"invalid JSON: {e}") from None
        dim, facets, labels = load_facets(data)
        rep = validate(facets, labels, dim)
        lines = [f"{c}: {'pass' if ok else 'FAIL'}" + (f" ({rep.messages[c]})" if c in rep.messages else "")
                 for c, ok in rep.checks.items()]
        lines.append("overall: " + ("pass" if rep.ok else "FAIL"))
        _emit(out, args.format, validation_section(rep), lines)
        return EXIT_OK if rep.ok else EXIT_FALSE

    if cmd == "isom":
        W1, W2 = read_polytope(args.F), read_polytope(args.G)
        iso = isomorphic(W1, W2, args.group)
        if iso is None:
            _emit(out, args.format, {"isomorphic": False, "group": args.group}, ["not isomorphic"])
            return EXIT_FALSE
        payload = {"isomorphic": True, "group": args.group, "L": iso.L.to_rows(),
                   "c": _qs(iso.c), "sigma": list(iso.sigma)}
        _emit(out, args.format, payload, [
            "isomorphic",
            f"L = {iso.L.to_rows()}",
            f"c = ({', '.join(_qs(iso.c))})",
            f"sigma = {list(iso.sigma)}",
        ])
        return EXIT_OK

    W = read_polytope(args.F)
    if cmd == "faces":
        faces = [{"active": list(F.active), "dim": F.dim, "vertices": list(F.vertex_indices)}
                 for F in face_lattice(W.base)]
        lines = _faces_text(faces, False)
        lines += [f"vertex {i}: {fmt_point(v)}" for i, v in enumerate(W.vertices)]
        _emit(out, args.format, {"faces": faces, "vertices": [_qs(v) for v in W.vertices]}, lines)
    elif cmd == "groups":
        faces = faces_section(W)
        smooth = all(not f["group"] for f in faces)
        _emit(out, args.format, {"faces": faces, "smooth": smooth},
              _faces_text(faces, True) + ["smooth (Delzant): " + ("yes" if smooth else "no")])
    elif cmd == "betti":
        b = betti_section(W, _parse_xi(args.xi))
        _emit(out, args.format, b, [f"b = {b['b']}", f"xi = {b['xi']}"])
    elif cmd == "delzant":
        d = delzant_section(W)
        _emit(out, args.format, d, _delzant_text(d))
    elif cmd == "verify":
        vr = verify_section(W, args.samples, args.seed, args.tol)
        _emit(out, args.format, vr, [f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in vr.items()])
        if not vr["passed"]:
            return EXIT_INTERNAL
    elif cmd == "report":
        rep = full_report(W, _parse_xi(args.xi))
        _emit(out, args.format, rep, _report_text(rep))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
