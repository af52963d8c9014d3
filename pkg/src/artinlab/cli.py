"""Command-line front end: ``artinlab <command> [options]``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import brace as br
from .coxeter import (
    DEFAULT_BOUND,
    CoxeterMatrix,
    CoxeterParseError,
    CoxeterType,
    classify_spherical,
    diagram_symmetries,
    named_matrix,
    parse_coxeter,
)
from .exact import context_for_labels
from .garside import ArtinGroup, artin_group
from .holomorph import (
    FiniteGroup,
    NotAGroupError,
    cyclic_group,
    finite_holomorph_roundtrip,
    klein_group,
    parse_group_table,
    symmetric_group,
)
from .order import (
    atom_permutation,
    build_ball,
    check_rigidity,
    default_core_height,
    export_dot,
    poset_automorphisms,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = ""
    type: str = ""
    matrix: str = ""
    height: int | None = None
    samples: int = 1000
    seed: int = 0
    dot: str = ""
    bound: int = DEFAULT_BOUND
    json: bool = False

    def render(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            lines.append(f"{f.name}={'' if v is None else v}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> RunConfig:
        kinds = {f.name: f.type for f in fields(cls)}
        values = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, raw = line.partition("=")
            if key not in kinds:
                raise ValueError(f"unknown config key {key!r}")
            kind = kinds[key]
            if kind == "bool":
                values[key] = raw == "True"
            elif kind == "int":
                values[key] = int(raw)
            elif kind == "int | None":
                values[key] = int(raw) if raw else None
            else:
                values[key] = raw
        return cls(**values)


# -- reporting ------------------------------------------------------------------------


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ", ".join(_text_value(x) for x in v)
    return str(v)


def report_format(header: dict, body: dict, as_json: bool = False) -> str:
    """Key: value lines in insertion order, or the same keys as one JSON object."""
    if as_json:
        return json.dumps({**header, **body}, sort_keys=False) + "\n"
    lines = [f"{k}: {_text_value(v)}" for k, v in header.items()]
    lines += [f"{k}: {_text_value(v)}" for k, v in body.items()]
    return "\n".join(lines) + "\n"


# -- inputs ---------------------------------------------------------------------------


def _matrix_from(cfg: RunConfig) -> CoxeterMatrix:
    if cfg.type and cfg.matrix:
        raise UsageError("give either --type or --matrix, not both")
    if cfg.type:
        try:
            t = CoxeterType.parse(cfg.type)
            return named_matrix(t.family, t.index)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if cfg.matrix:
        try:
            return parse_coxeter(Path(cfg.matrix).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.matrix}: {exc}") from exc
        except CoxeterParseError as exc:
            raise UsageError(f"{cfg.matrix}: {exc}") from exc
    raise UsageError("this command needs --type X n or --matrix FILE")


def _artin(cfg: RunConfig) -> tuple[CoxeterMatrix, ArtinGroup, str]:
    m = _matrix_from(cfg)
    types = classify_spherical(m)
    if types is None:
        raise UsageError("Coxeter matrix is not of spherical type")
    return m, artin_group(m, cfg.bound), " + ".join(types)


_NAMED_GROUPS = {
    "Z4": lambda: cyclic_group(4),
    "Z2^2": klein_group,
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "S3": lambda: symmetric_group(3),
}


def _finite_group(args) -> FiniteGroup:
    if args.group:
        key = args.group.replace("_", "")
        if key.startswith("Z") and key[1:].isdigit():
            return cyclic_group(int(key[1:]))
        if key not in _NAMED_GROUPS:
            raise UsageError(f"unknown group {args.group!r}")
        return _NAMED_GROUPS[key]()
    if not args.table:
        raise UsageError("holomorph needs a table file or --group")
    try:
        g = parse_group_table(Path(args.table).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.table}: {exc}") from exc
    g.name = Path(args.table).name
    return g


# -- commands -------------------------------------------------------------------------


def cmd_info(cfg, args):
    m, G, name = _artin(cfg)
    syms = diagram_symmetries(m)
    ctx = context_for_labels(m.labels())
    body = {
        "classification": name,
        "rank": m.n,
        "order": G.table.order,
        "longest_length": G.delta_length,
        "field_L": ctx.L,
        "field_degree": ctx.degree,
        "oddly_laced": m.is_oddly_laced(),
        "diagram_symmetries": len(syms),
        "symmetries": [str(s) for s in syms],
    }
    return body, True


def cmd_normal_form(cfg, args):
    _, G, _ = _artin(cfg)
    try:
        g = G.parse(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    inv = G.inv(g)
    body = {
        "input": args.word,
        "normal_form": G.render_normal_form(g),
        "delta_power": g.dpow,
        "factors": len(g.factors),
        "positive": G.is_positive(g),
        "word": G.render_word(g),
        "inverse": G.render_normal_form(inv),
    }
    if G.is_positive(g):
        body["height"] = G.height(g)
    return body, True


def cmd_lattice(cfg, args):
    m, G, name = _artin(cfg)
    h = 3 if cfg.height is None else cfg.height
    ball = build_ball(G, h)
    body = {
        "classification": name,
        "height": h,
        "nodes": len(ball),
        "edges": len(ball.edges),
        "level_sizes": ball.level_sizes(),
    }
    if cfg.dot:
        text = export_dot(G, ball)
        if cfg.dot == "-":
            body["dot"] = text
        else:
            Path(cfg.dot).write_text(text)
            body["dot_file"] = cfg.dot
    return body, True


def cmd_rigidity(cfg, args):
    m, G, name = _artin(cfg)
    ok = True
    body = {"classification": name}
    for dual in (False, True):
        r = check_rigidity(G, dual=dual, type_name=name)
        key = "dual_rigid" if dual else "rigid"
        body[key] = "PASS" if r.passed else "FAIL"
        if r.condition1_failures:
            body[key + "_condition1_failures"] = [f"{x},{y}:{c}" for x, y, c in r.condition1_failures]
        if r.condition2_failures:
            body[key + "_condition2_failures"] = [f"{x}:{c}" for x, c in r.condition2_failures]
        ok = ok and r.passed
    body["result"] = "PASS" if ok else "FAIL"
    return body, ok


def cmd_automorphisms(cfg, args):
    m, G, name = _artin(cfg)
    top = max(m.labels())
    threshold = top + 2
    h = threshold if cfg.height is None else cfg.height
    ball = build_ball(G, h)
    core = default_core_height(ball, top)
    autos = poset_automorphisms(ball, fix_identity=True, core_height=core)
    syms = diagram_symmetries(m)
    perms = [atom_permutation(ball, a) for a in autos]
    restrict_ok = all(p.preserves(m) for p in perms)
    asserted = h >= threshold
    ok = restrict_ok and (not asserted or len(autos) == len(syms))
    body = {
        "classification": name,
        "height": h,
        "core_height": core,
        "nodes": len(ball),
        "automorphisms": len(autos),
        "diagram_symmetries": len(syms),
        "atom_permutations": [str(p) for p in perms],
        "restrict_to_diagram_symmetries": restrict_ok,
        "count_asserted": asserted,
        "result": "PASS" if ok else "FAIL",
    }
    return body, ok


def _spec_from(cfg, args) -> br.BraceSpec:
    if args.spec:
        try:
            m = _matrix_from(cfg) if (cfg.type or cfg.matrix) and "type" not in args.spec else None
            return br.parse_brace_spec(args.spec, m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError("this command needs --spec")


def _specs_from(cfg, args) -> list[br.BraceSpec]:
    if args.spec:
        return [_spec_from(cfg, args)]
    m, _, _ = _artin(cfg)
    try:
        return br.catalog(m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_brace(cfg, args):
    action = args.action
    if action == "validate":
        spec = _spec_from(cfg, args)
        r = br.validate_brace_spec(spec)
        body = {"spec": spec.render(), "valid": r.valid, "errors": r.errors, "notes": r.notes}
        body["result"] = "PASS" if r.valid else "FAIL"
        return body, r.valid
    if action == "catalog":
        m, _, name = _artin(cfg)
        try:
            specs = br.catalog(m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        body = {"classification": name, "count": len(specs)}
        body.update({f"spec_{i + 1}": s.render() for i, s in enumerate(specs)})
        return body, True
    if action == "enumerate":
        m, _, name = _artin(cfg)
        try:
            specs = br.enumerate_brace_specs(m)
            cat = br.catalog(m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        same = {br.spec_key(s) for s in specs} == {br.spec_key(s) for s in cat}
        body = {"classification": name, "count": len(specs), "matches_catalog": same}
        body.update({f"spec_{i + 1}": s.render() for i, s in enumerate(specs)})
        body["result"] = "PASS" if same else "FAIL"
        return body, same
    if action == "verify":
        specs = _specs_from(cfg, args)
        ok = True
        body = {"specs": len(specs), "samples": cfg.samples}
        for i, spec in enumerate(specs, 1):
            r = br.verify_brace_identity(spec, cfg.samples, cfg.seed, force=args.force)
            good = r.passed and (r.nontrivial or spec.is_trivial())
            ok = ok and good
            body[f"spec_{i}"] = spec.render()
            body[f"spec_{i}_failures"] = [f"{k}={v}" for k, v in r.failures.items()]
            body[f"spec_{i}_nontrivial_pairs"] = r.nontrivial_pairs
            for check, w in r.witnesses.items():
                body[f"spec_{i}_witness_{check}"] = w
            body[f"spec_{i}_result"] = "PASS" if good else "FAIL"
        body["result"] = "PASS" if ok else "FAIL"
        return body, ok
    if action == "torus":
        if args.n is None:
            raise UsageError("brace torus needs --n")
        try:
            r = br.torus_relation_check(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        body = {
            "n": r.n,
            "equal_exponents": r.equal_at,
            f"sigma1^o{r.n} == sigma2^o{r.n}": r.n in r.equal_at,
            "equals_delta": r.top_is_delta,
            "result": "PASS" if r.passed else "FAIL",
        }
        return body, r.passed
    if action == "center":
        specs = _specs_from(cfg, args)
        if not specs:
            raise UsageError("no catalog spec for this type")
        r = br.delta_center_check(specs[0], args.k_max, min(cfg.samples, 100), cfg.seed)
        body = {
            "spec": specs[0].render(),
            "k": "none" if r.k is None else r.k,
            "circ_central_samples": r.checked,
            "circ_central": r.circ_central,
            "result": "PASS" if r.passed else "FAIL",
        }
        return body, r.passed
    raise UsageError(f"unknown brace action {action!r}")


def cmd_holomorph(cfg, args):
    g = _finite_group(args)
    r = finite_holomorph_roundtrip(g)
    degrees = [b.right_nilpotency_degree() for b in r.braces]
    body = {
        "group": r.group,
        "order": r.order,
        "automorphisms": r.automorphisms,
        "braces": len(r.braces),
        "trivial_braces": sum(b.is_trivial() for b in r.braces),
        "roundtrip_subgroups": r.roundtrip_subgroups,
        "roundtrip_braces": r.roundtrip_braces,
        "skew_brace_identity": r.all_skew_braces,
        "right_nilpotency_degrees": ["none" if d is None else d for d in degrees],
        "result": "PASS" if r.passed else "FAIL",
    }
    return body, r.passed


COMMANDS = {
    "info": cmd_info,
    "normal-form": cmd_normal_form,
    "lattice": cmd_lattice,
    "rigidity": cmd_rigidity,
    "automorphisms": cmd_automorphisms,
    "brace": cmd_brace,
    "holomorph": cmd_holomorph,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", nargs=2, metavar=("X", "N"), help="named type, e.g. --type D 4")
    common.add_argument("--matrix", default="", help="Coxeter matrix file")
    common.add_argument("--height", type=int, default=None, help="ball height")
    common.add_argument("--samples", type=int, default=1000, help="sample count (default 1000)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--dot", default="", help="write DOT output to this file ('-' for the report)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="group enumeration bound")
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    parser = argparse.ArgumentParser(prog="artinlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="classification, |W| and diagram symmetries")
    p = sub.add_parser("normal-form", parents=[common], help="normal form of a word")
    p.add_argument("word", help="word such as s1.s2^-1.D")
    sub.add_parser("lattice", parents=[common], help="ball statistics and DOT export")
    sub.add_parser("rigidity", parents=[common], help="rigidity and dual rigidity")
    sub.add_parser("automorphisms", parents=[common], help="ball automorphisms fixing e")
    p = sub.add_parser("brace", parents=[common], help="skew-brace tools")
    p.add_argument("action", choices=["validate", "catalog", "enumerate", "verify", "torus", "center"])
    p.add_argument("--spec", default="", help="e.g. 'type D 4 / alpha 1:(1 2) 4:(2 3)'")
    p.add_argument("--n", type=int, default=None, help="dihedral label for 'torus'")
    p.add_argument("--k-max", type=int, default=8, help="largest Delta power for 'center'")
    p.add_argument("--force", action="store_true", help="verify even an invalid spec")
    p = sub.add_parser("holomorph", parents=[common], help="finite holomorph correspondence")
    p.add_argument("table", nargs="?", default="", help="Cayley table file")
    p.add_argument("--group", default="", help="named carrier: Z<n>, Z2^2, S3")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        type=" ".join(args.type) if args.type else "",
        matrix=args.matrix,
        height=args.height,
        samples=args.samples,
        seed=args.seed,
        dot=args.dot,
        bound=args.bound,
        json=args.json,
    )


def dispatch(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = config_from_args(args)
    name = args.command + (f" {args.action}" if args.command == "brace" else "")
    header = {"command": name, "seed": cfg.seed, "bound": cfg.bound}
    try:
        body, ok = COMMANDS[args.command](cfg, args)
    except (UsageError, NotAGroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    out.write(report_format(header, body, cfg.json))
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
