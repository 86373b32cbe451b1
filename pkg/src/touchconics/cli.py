"""Command line front end: run the pipeline and print JSON or text reports.

Exit codes: 0 all checks pass, 2 bad input, 3 certification failure
(retry with a higher --precision), 4 some check or census mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from collections import Counter
from typing import Callable, Sequence

from . import __version__
from .bisecants import (
    P1,
    BisecantError,
    build_cubic,
    component_histogram,
    family_components,
    qprime_and_S,
    y0_component_of,
)
from .exactpoly import PolyParseError
from .plane_quartic import (
    CertificationError,
    FamilyError,
    PlaneError,
    PlaneSpec,
    bitangents,
    enumerate_families,
    section,
)
from .quartic13 import QuarticSpec, SpecParseError, branch_sextic, build, discriminant_identity, nodes, validate

log = logging.getLogger("touchconics")

SCHEMA = "report-v1"
EXIT_OK, EXIT_INPUT, EXIT_CERT, EXIT_CHECK = 0, 2, 3, 4
MAX_PLANE_TRIES = 50


class InputError(ValueError):
    pass


# --- inputs -----------------------------------------------------------------------

def load_spec(path: str | None) -> QuarticSpec:
    return QuarticSpec.diagonal_half() if path is None else QuarticSpec.load(path)


def parse_plane(text: str, surface) -> PlaneSpec:
    t = text.strip()
    if t.upper() in ("E1", "E2", "E3", "E4"):
        return PlaneSpec.make(surface.plane_coeffs(int(t[1])))
    return PlaneSpec.parse(t)


def random_planes(surface, seed: int, count: int, height: int = 9) -> list[PlaneSpec]:
    """Reproducible planes with small integer coefficients and a certified smooth section."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > MAX_PLANE_TRIES * count:
            raise CertificationError("could not draw enough planes with a smooth section")
        coeffs = [rng.randint(-height, height) for _ in range(4)]
        if not any(coeffs):
            continue
        plane = PlaneSpec.make(coeffs)
        if section(surface, plane).kind == "Smooth":
            out.append(plane)
    return out


def _planes(args, surface) -> list[PlaneSpec]:
    if args.plane and args.seed is not None:
        raise InputError("use either --plane or --seed")
    if args.plane:
        return [parse_plane(p, surface) for p in args.plane]
    if args.seed is not None:
        return random_planes(surface, args.seed, args.count)
    raise InputError("this command needs --plane or --seed")


# --- commands ---------------------------------------------------------------------

def cmd_verify_gb(args) -> dict:
    from .groebner import verify_square_basis

    report = verify_square_basis(args.basis, regenerate=args.regenerate)
    out = report.as_dict()
    out["checks"] = {"groebner_basis": report.passed}
    return out


def cmd_quartic(args) -> dict:
    spec = load_spec(args.spec)
    val = validate(spec)
    surf = build(spec)
    ns = nodes(surf)
    sextic = branch_sextic(surf)
    cubic = build_cubic(surf)
    config = qprime_and_S(surf, cubic)
    return {
        "validation": val.as_dict(),
        "nodes": ns.as_dict(),
        "branch_sextic": sextic.as_dict(),
        "cubic_model": cubic.as_dict(),
        "space_curve": config.as_dict(),
        "checks": {
            "validation": val.passed,
            "thirteen_nodes": ns.count() == 13,
            "real_node_ordinary": ns.real_hessian_rank == 3,
            "conjugate_nodes_simple": all(p.discriminant != 0 for p in ns.pairs),
            "discriminant_identity": discriminant_identity(surf),
            "space_curve": config.passed,
        },
    }


def _section_payload(pq) -> dict:
    return {"plane": pq.plane.as_dict(), "classification": pq.classification.as_dict()}


def cmd_section(args) -> dict:
    surf = build(load_spec(args.spec))
    return {"sections": [_section_payload(section(surf, p)) for p in _planes(args, surf)]}


def _bitangent_payload(pq, bts) -> dict:
    expected = {"Smooth": 28, "OneNode": 22}.get(pq.kind)
    through = sum(b.through_node for b in bts)
    weighted = sum(b.multiplicity_in_fiber or 0 for b in bts)
    checks = {"count_matches": len(bts) == expected, "weighted_total_28": weighted == 28}
    if pq.kind == "OneNode":
        checks["six_through_node"] = through == 6
    return {
        **_section_payload(pq),
        "count": len(bts),
        "through_node": through,
        "multiplicity_weighted": weighted,
        "certificates": dict(sorted(Counter(b.certificate for b in bts).items())),
        "bitangents": [b.as_dict() for b in bts],
        "checks": checks,
    }


def _sections_with_bitangents(args):
    surf = build(load_spec(args.spec))
    for plane in _planes(args, surf):
        pq = section(surf, plane)
        if pq.kind == "Degenerate":
            raise InputError(f"degenerate section: {pq.classification.reason}")
        yield surf, pq, bitangents(pq, args.precision)


def cmd_bitangents(args) -> dict:
    return {"planes": [_bitangent_payload(pq, bts) for _, pq, bts in _sections_with_bitangents(args)]}


def cmd_families(args) -> dict:
    out = []
    for _, pq, bts in _sections_with_bitangents(args):
        census = enumerate_families(pq, bts, args.precision)
        entry = _section_payload(pq)
        entry["census"] = census.as_dict()
        entry["families"] = [
            {"pairs": [list(p) for p in sorted(f.pair_set())], **f.as_dict()} for f in census.families
        ]
        entry["checks"] = census.checks
        out.append(entry)
    return {"planes": out}


def cmd_components(args) -> dict:
    from .cubic_lines import yf2_component_census

    lattice = yf2_component_census()
    lattice_shape = lattice.family_orbit_sizes
    out = []
    for surf, pq, bts in _sections_with_bitangents(args):
        if pq.kind != "Smooth":
            raise InputError("the component pipeline needs a smooth section")
        cubic = build_cubic(surf)
        config = qprime_and_S(surf, cubic)
        labels = [y0_component_of(pq, b, args.precision, cubic, config) for b in bts]
        hist = component_histogram(labels)
        census = enumerate_families(pq, bts, args.precision)
        comp = family_components(census.families, labels)
        checks = {
            "plane_labels_once_each": all(hist.get(f"PlaneE{i}") == 1 for i in range(1, 5)),
            "histogram_8_8_8": [hist.get(k, 0) for k in ("B12", "B13", "B23")] == [8, 8, 8],
            "family_census": census.passed,
            **comp.checks,
            "matches_lattice_family_orbits": comp.shape == lattice_shape,
        }
        out.append({
            **_section_payload(pq),
            "labels": [a.as_dict() for a in labels],
            "histogram": hist,
            "components": comp.as_dict(),
            "checks": checks,
        })
    return {
        "projection_node": list(P1),
        "lattice_family_orbits": lattice_shape,
        "planes": out,
    }


def cmd_orbits(args) -> dict:
    from . import cubic_lines as cl

    roots = cl.roots_e6()
    dsix = cl.double_sixes()
    weyl = cl.weyl_group()
    census = cl.orbit_census()
    bt = cl.yf2_component_census()
    dmap, dchecks = cl.d_assignments()
    table = cl.action_table_matches()
    dyn = cl.dynkin()
    checks = {
        "lines_27_each_meets_10": len(cl.LINE_LABELS) == 27 and all(len(a) == 10 for a in cl.incidence27()),
        "curves_56": len(cl.CURVE_LABELS) == 56,
        "roots_72_30_40_2": sorted(Counter(cl.root_type(x) for x in roots).values()) == [2, 30, 40],
        "double_sixes_36_fix_15": len(dsix) == 36 and all(cl.double_six_element(d).fixed() == 15 for d in dsix),
        "weyl_order_51840": weyl.order == 51840,
        "c16_elements_36": cl.c16_count(weyl) == 36,
        "stabilizer_roots_match_list": cl.matches_listed_roots(),
        "action_table_matches": all(table.values()),
        "dynkin_d4_star": dyn.is_d4_star() and dyn.center == 12,
        "base_valid": cl.base_is_valid(),
        **{f"d_{k}": v for k, v in dchecks.items()},
        **census.checks,
        **cl.semidirect_structure(),
        **cl.generator_sanity(),
        **{f"bitangent_{k}": v for k, v in bt.checks.items()},
    }
    return {
        "root_census": dict(sorted(Counter(cl.root_type(x) for x in roots).items())),
        "weyl_order": weyl.order,
        "d_assignment": dmap,
        "stabilizer_roots": [list(x) for x in cl.stabilizer_roots()],
        "dynkin": {"nodes": dyn.nodes, "edges": [list(e) for e in dyn.edges]},
        "orbits": census.as_dict(),
        "bitangent_census": bt.as_dict(),
        "checks": checks,
    }


COMMANDS: dict[str, Callable] = {
    "verify-gb": cmd_verify_gb,
    "quartic": cmd_quartic,
    "section": cmd_section,
    "bitangents": cmd_bitangents,
    "families": cmd_families,
    "components": cmd_components,
    "orbits": cmd_orbits,
}


# --- reports ----------------------------------------------------------------------

def failed_checks(payload, path: str = "") -> list[str]:
    out = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if k == "checks" and isinstance(v, dict):
                out += [f"{path}{name}" for name, ok in v.items() if ok is False]
            else:
                out += failed_checks(v, f"{path}{k}.")
    elif isinstance(payload, list):
        for i, v in enumerate(payload):
            out += failed_checks(v, f"{path}{i}.")
    return out


def make_report(command: str, args, payload: dict) -> dict:
    spec = load_spec(args.spec) if command != "verify-gb" else None
    failures = failed_checks(payload)
    return {
        "schema": SCHEMA,
        "tool": "touchconics",
        "version": __version__,
        "command": command,
        "spec_digest": spec.digest() if spec else None,
        "precision_bits": args.precision,
        "passed": not failures,
        "failed_checks": failures,
        "payload": payload,
    }


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + "[" + ", ".join(_scalar(v) for v in obj) + "]")
        else:
            for v in obj:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return json.dumps(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="quartic spec file (3x3 rationals); default: bundled diagonal-half spec")
    common.add_argument("--precision", type=int, choices=(64, 128, 256), default=64, help="isolation width in bits")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="format", action="store_const", const="text", help="indented text output")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("-v", "--verbose", action="store_true")
    common.set_defaults(format="json")

    planes = argparse.ArgumentParser(add_help=False)
    planes.add_argument("--plane", action="append", help='plane "y0 y1 y2 y3" or E1..E4 (repeatable)')
    planes.add_argument("--seed", type=int, help="draw random planes with a smooth section")
    planes.add_argument("--count", type=int, default=1, help="number of random planes (with --seed)")

    p = argparse.ArgumentParser(prog="touchconics", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"touchconics {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    g = sub.add_parser("verify-gb", parents=[common], help="verify the bundled Groebner basis")
    g.add_argument("--regenerate", action="store_true", help="recompute the basis and diff the eliminants")
    g.add_argument("--basis", help="basis file to check instead of the bundled one")
    sub.add_parser("quartic", parents=[common], help="validate the quartic and list its nodes")
    for name, text in (
        ("section", "classify plane sections"),
        ("bitangents", "certified bitangents of plane sections"),
        ("families", "families of touching conics"),
        ("components", "component labels and family aggregation"),
    ):
        sub.add_parser(name, parents=[common, planes], help=text)
    sub.add_parser("orbits", parents=[common], help="lattice and monodromy orbit tables")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        payload = COMMANDS[args.command](args)
        report = make_report(args.command, args, payload)
    except (InputError, PlaneError, SpecParseError, PolyParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CertificationError, FamilyError, BisecantError, ArithmeticError) as exc:
        # ArithmeticError also covers root isolation that could not be certified
        print(f"certification failed: {exc} (try a larger --precision)", file=sys.stderr)
        return EXIT_CERT
    text = json.dumps(report, indent=2, sort_keys=False) if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if not report["passed"]:
        for name in report["failed_checks"]:
            print(f"check failed: {name}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
