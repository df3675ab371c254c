"""Command line interface.

Exit status: 0 on success, 1 on a failed check or bad input, 2 when a
resource cap would be exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import config
from .config import CapExceeded


def jsonable(x):
    """Exact, deterministic JSON form: fractions become 'p/q' strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v)
                for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=str) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return str(x)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.json:
        print(json.dumps(jsonable(payload), indent=2, sort_keys=True))
    else:
        print(text if text is not None else _plain(payload))


def _plain(payload, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_plain(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(jsonable(v))}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verification checks

def _ok(report: dict) -> bool:
    if "ok" in report:
        return bool(report["ok"])
    return all(v for k, v in report.items() if isinstance(v, bool))


def _check_t(which):
    def run(genus, args):
        from .torelli import t_report
        r = t_report(genus)
        got, exp = r[which], r[f"{which}_expected"]
        return {"genus": genus,
                "theta_coefficient": got[0] if got else None,
                "theta_expected": exp[0],
                "s_ww_coefficient": got[1] if got else None,
                "s_ww_expected": exp[1],
                "determinant": r["determinant"],
                "determinant_expected": r["determinant_expected"],
                "ok": r[f"{which}_ok"] and r["det_ok"]}
    return run


def _check_ker(genus, args):
    from .torelli import ker_report
    if genus >= 4 and not args.deep:
        raise CapExceeded("ker-b2 at genus >= 4 runs only with --deep")
    r = ker_report(genus)
    r["ok"] = r["equal"] and r["b2_r1_zero"] and r["b2_r2_zero"]
    return r


def _check_im(genus, args):
    from .torelli import im_report
    r = im_report(genus)
    r["ok"] = r["equal"]
    return r


def _check_hwv(genus, args):
    from .torelli import hwv_report
    r = hwv_report(genus)
    r["ok"] = all(v["ok"] if isinstance(v, dict) else v for v in r.values())
    return r


def _check_r3(genus, args):
    from .torelli import r3_report
    r = r3_report(genus)
    r["ok"] = r["b2_equals_theta"] and r["tree_reduction_zero"]
    return r


def _check_subalgebra(genus, args):
    from .torelli import generated_subalgebra
    r = generated_subalgebra(genus, min(3, config.max_degree()))
    r["ok"] = all(r["even"].values())
    return r


def _check_degree3(genus, args):
    from .torelli import degree3_kernel_report
    r = degree3_kernel_report(genus)
    # only the inclusion is asserted; equality is reported
    r["ok"] = r["ideal_in_kernel"]
    return r


def _check_lem_bracket(genus, args):
    from .torelli import lem_bracket_report
    return lem_bracket_report(genus, args.samples or 200, args.seed)


def _check_l2l3(genus, args):
    from .rep_theory import verify_l2l3
    if not 3 <= genus <= 6:
        raise CapExceeded("l2l3 is tabulated for genus 3..6")
    return verify_l2l3(genus)


def _check_dims(genus, args):
    from .quotient import quotient_basis
    out = {"genus": genus}
    ok = True
    for i in range(1, min(3, config.max_degree()) + 1):
        qb = quotient_basis(genus, i)
        loops = qb.dims_by_loop()
        bound = (i + 2) // 2 if i % 2 == 0 else (i - 1) // 2
        within = all(k <= bound for k in loops)
        ok &= within
        out[f"degree_{i}"] = {"dimension": qb.dimension, "loop_parts": loops,
                              "loop_bound": bound, "within_bound": within}
    out["ok"] = ok
    return out


def _check_c2(genus, args):
    from .closed import c2_report
    return c2_report(genus)


def _check_omega(genus, args):
    from .closed import omega_lemmas_report
    return omega_lemmas_report(genus, args.samples or 20, args.seed)


def _check_hopf_ideal(genus, args):
    from .closed import hopf_ideal_report
    return hopf_ideal_report(genus, args.samples or 10, args.seed)


def _check_lie_ideal(genus, args):
    from .closed import lie_ideal_report
    return lie_ideal_report(genus, args.samples or 30, args.seed)


def _check_weight(genus, args):
    from .weight_systems import builtin, verify_square
    return verify_square(builtin(args.lie), genus, args.samples or 50, args.seed)


CHECKS = {
    "lem-bracket": _check_lem_bracket,
    "t1": _check_t("t1"),
    "t2": _check_t("t2"),
    "ker-b2": _check_ker,
    "im-b2": _check_im,
    "hwv": _check_hwv,
    "r3": _check_r3,
    "subalgebra-dims": _check_subalgebra,
    "degree3-kernel": _check_degree3,
    "l2l3": _check_l2l3,
    "dims": _check_dims,
    "c2": _check_c2,
    "omega-lemmas": _check_omega,
    "hopf-ideal": _check_hopf_ideal,
    "lie-ideal": _check_lie_ideal,
    "weight-square": _check_weight,
}


def run_verify(name: str, genus: int, args) -> tuple[int, dict]:
    if name == "all":
        results = {}
        status = 0
        for key in CHECKS:
            if key == "ker-b2" and genus >= 4 and not args.deep:
                continue
            if key == "l2l3" and not 3 <= genus <= 6:
                continue
            code, rep = run_verify(key, genus, args)
            results[key] = rep
            status = max(status, code)
        return status, {"genus": genus, "checks": results,
                        "ok": all(_ok(r) for r in results.values())}
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; choose from {', '.join(sorted(CHECKS))}, all")
    rep = CHECKS[name](genus, args)
    return (0 if _ok(rep) else 1), rep


# ---------------------------------------------------------------------------
# commands

def _element_payload(x: dict, genus: int, space: str) -> dict:
    from .parser import format_element
    from .quotient import nf
    payload = {"element": format_element(x),
               "terms": [{"coefficient": c, "diagram": _diagram_text(d)} for d, c in sorted(x.items())]}
    if not any(d.ordered and d.legs for d in x):
        unordered = {d._replace(ordered=False): c for d, c in x.items()}
        if space == "I":
            coords = _nf_mod_i(unordered, genus)
        else:
            coords = nf(unordered, genus)
        payload["normal_form"] = [{"monomial": list(m), "coefficient": c} for m, c in sorted(coords.items())]
        payload["zero"] = not coords
    return payload


def _diagram_text(d) -> str:
    from .diagrams import format_diagram
    return format_diagram(d) if (d.degree or d.legs) else "empty"


def _nf_mod_i(x: dict, genus: int) -> dict:
    from .closed import quotient_mod_i
    from .diagrams import is_connected
    out: dict = {}
    for d, c in x.items():
        if not is_connected(d):
            raise ValueError("--space I normal forms are implemented for connected elements")
        coords = quotient_mod_i(genus, d.degree).nf({d: c})
        for k, v in coords.items():
            key = ((d.degree, k),)
            y = out.get(key, 0) + v
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return out


def _evaluate(args, text: str):
    from .expressions import evaluate
    from .parser import parse_expression, label_genus
    node = parse_expression(text)
    genus = args.genus if args.genus is not None else max(1, label_genus(node))
    config.check_caps(genus, 0)
    return genus, evaluate(node, genus)


def cmd_expression(args, text: str) -> int:
    from .parser import format_tensor
    genus, v = _evaluate(args, text)
    if v.kind == "tensor":
        payload = {"expression": text, "genus": genus, "tensor": format_tensor(v.data),
                   "terms": len(v.data)}
        _emit(args, payload, format_tensor(v.data))
        return 0
    payload = {"expression": text, "genus": genus}
    payload.update(_element_payload(v.data, genus, args.space))
    text_out = payload["element"]
    if "normal_form" in payload:
        text_out += "\nnormal form: " + (" + ".join(
            f"{t['coefficient']}*{t['monomial']}" for t in payload["normal_form"]) or "0")
    _emit(args, payload, text_out)
    return 0


def cmd_dim(args) -> int:
    genus = args.genus if args.genus is not None else 3
    out = {"genus": genus, "space": args.space, "ordered": args.ordered, "degrees": {}}
    for k in _degrees(args):
        qb = _basis(args, genus, k)
        out["degrees"][k] = {"dimension": qb.dimension, "loop_parts": qb.dims_by_loop(),
                             "free_diagrams": len(qb.free), "relation_rows": qb.n_rows}
    _emit(args, out)
    return 0


def _degrees(args):
    if args.degree is not None:
        return [args.degree]
    return list(range(1, config.max_degree() + 1))


def _basis(args, genus, degree):
    from .quotient import quotient_basis
    if args.space == "I":
        if args.ordered:
            raise ValueError("the I quotient is built on the unordered space")
        from .closed import quotient_mod_i
        return quotient_mod_i(genus, degree)
    return quotient_basis(genus, degree, args.ordered)


def cmd_export(args) -> int:
    genus = args.genus if args.genus is not None else 3
    degree = args.degree if args.degree is not None else 2
    qb = _basis(args, genus, degree)
    payload = {
        "genus": genus, "degree": degree, "space": args.space, "ordered": args.ordered,
        "free_diagrams": [_diagram_text(d) for d in qb.free],
        "basis": [{"index": k, "diagram": _diagram_text(qb.basis_diagram(k)), "loop": qb.loop_of(k)}
                  for k in range(qb.dimension)],
        "relations": qb.relation_matrix_json(),
    }
    args.json = True
    _emit(args, payload)
    return 0


def cmd_decompose(args) -> int:
    from .rep_theory import decompose, parse_partition, verify_l2l3
    genus = args.genus if args.genus is not None else 3
    if args.target == "l2l3":
        rep = verify_l2l3(genus)
        _emit(args, rep)
        return 0 if rep["ok"] else 1
    if not args.target.startswith("lambda="):
        raise ValueError("target must be l2l3 or lambda=<partition>")
    rep = decompose(parse_partition(args.target[len("lambda="):]), genus)
    _emit(args, rep)
    return 0 if rep["dimension_check"] else 1


def cmd_weight(args) -> int:
    from .weight_systems import builtin, format_weight, weight_system
    genus, v = _evaluate(args, args.expression)
    if v.kind != "element" or any(d.ordered and d.legs for d in v.data):
        raise ValueError("weight systems take unordered elements")
    lie = builtin(args.lie)
    w = weight_system({d._replace(ordered=False): c for d, c in v.data.items()}, lie)
    payload = {"lie": lie.name, "genus": genus, "expression": args.expression,
               "value": {k: [{"monomial": [list(x) for x in m], "coefficient": c}
                             for m, c in sorted(p.items())] for k, p in sorted(w.items())}}
    _emit(args, payload, format_weight(w))
    return 0


def cmd_verify(args) -> int:
    genus = args.genus if args.genus is not None else 3
    code, rep = run_verify(args.check, genus, args)
    if args.json:
        _emit(args, {"check": args.check, "passed": code == 0, "report": rep})
    else:
        print(f"{args.check} (genus {genus}): {'PASS' if code == 0 else 'FAIL'}")
        print(_plain(rep, 1))
    return code


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", "-g", type=int, default=None)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--space", choices=["A", "I"], default="A",
                        help="quotient space: A, or A modulo the closed-surface ideal I")
    common.add_argument("--no-cache", action="store_true", help="do not read or write cached bases")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--max-genus", type=int, default=None)
    common.add_argument("--max-rows", type=int, default=None)

    p = argparse.ArgumentParser(prog="symjac", description="Symplectic Jacobi diagram computations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="evaluate an expression and print its normal form")
    s.add_argument("expression")
    for name, n in (("star", 2), ("bracket", 2), ("chi", 1), ("chiinv", 1)):
        s = sub.add_parser(name, parents=[common], help=f"apply {name}")
        s.add_argument("operands", nargs=n)
    s = sub.add_parser("dim", parents=[common], help="dimensions of quotient spaces")
    s.add_argument("--degree", "-d", type=int, default=None)
    s.add_argument("--ordered", action="store_true")
    s = sub.add_parser("export", parents=[common], help="basis and relation matrix as JSON")
    s.add_argument("--degree", "-d", type=int, default=None)
    s.add_argument("--ordered", action="store_true")
    s = sub.add_parser("verify", parents=[common], help="run a verification check")
    s.add_argument("check", help=", ".join(list(CHECKS) + ["all"]))
    s.add_argument("--deep", action="store_true", help="allow the long genus-4 kernel run")
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lie", default="sl2")
    s = sub.add_parser("decompose", parents=[common], help="Sp(2g) decomposition of Schur modules")
    s.add_argument("--target", default="l2l3", help="l2l3 or lambda=<partition>")
    s = sub.add_parser("weight", parents=[common], help="evaluate a weight system")
    s.add_argument("--lie", default="sl2", help="sl2, abelian<N>, or a JSON file")
    s.add_argument("expression")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config.configure(max_degree=args.max_degree, max_genus=args.max_genus,
                     max_rows=args.max_rows, threads=args.threads,
                     cache_dir=args.cache_dir)
    if args.no_cache:
        config.configure(use_cache=False)
    try:
        if args.command == "normalize":
            return cmd_expression(args, args.expression)
        if args.command in ("star", "bracket", "chi", "chiinv"):
            return cmd_expression(args, f"{args.command}({', '.join(args.operands)})")
        if args.command == "dim":
            return cmd_dim(args)
        if args.command == "export":
            return cmd_export(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "decompose":
            return cmd_decompose(args)
        if args.command == "weight":
            return cmd_weight(args)
    except CapExceeded as exc:
        print(f"symjac: resource cap: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"symjac: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
