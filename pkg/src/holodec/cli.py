"""Command-line driver.

Subcommands: ``skeleton`` (sets, classes, tiles, depths, optional DOT file),
``holonomy`` (per-depth groups), ``cascade`` (components and dependency
tables over reachable prefixes), and ``verify`` (embedding and division
replay; exit status reflects the outcome).

Input is a JSON document ``{"n": 3, "generators": [[2,1,3],[1,2,2]],
"names": ["s1","s2"]}`` or the terse form ``n=3; [2,1,3]; [1,2,2]``.
Generator images are 1-based.  All reports are byte-stable for a fixed
input and seed; timing goes to stderr.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .cascade import HolonomyCascade
from .chains import maximal_chains, position
from .dot import skeleton_dot
from .errors import BudgetExceededError
from .holonomy import STAR
from .skeleton import Skeleton
from .transformation import DEFAULT_BUDGET, TransformationSemigroup

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(ValueError):
    pass


@dataclass
class InputDocument:
    degree: int
    generators: list[list[int]]
    names: list[str] | None
    budget: int | None = None
    seed: int | None = None

    def validate(self) -> None:
        if self.degree < 1:
            raise InputError("n must be a positive integer")
        if not self.generators:
            raise InputError("at least one generator is required")
        for row in self.generators:
            if len(row) != self.degree:
                raise InputError(
                    f"generator {row} has length {len(row)}, expected {self.degree}")
            for j in row:
                if not 1 <= j <= self.degree:
                    raise InputError(f"image {j} outside 1..{self.degree} in {row}")
        if self.names is not None and len(self.names) != len(self.generators):
            raise InputError("one name per generator is required")


def parse_input(text: str) -> InputDocument:
    text = text.strip()
    if not text:
        raise InputError("empty input")
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        try:
            doc = InputDocument(
                degree=int(data["n"]),
                generators=[list(map(int, row)) for row in data["generators"]],
                names=list(map(str, data["names"])) if "names" in data else None,
                budget=int(data["budget"]) if "budget" in data else None,
                seed=int(data["seed"]) if "seed" in data else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed input document: {exc}") from exc
    else:
        degree = None
        rows = []
        pieces = [p.strip() for chunk in text.splitlines()
                  for p in chunk.split(";")]
        for piece in (p for p in pieces if p):
            if piece.startswith("n="):
                try:
                    degree = int(piece[2:])
                except ValueError as exc:
                    raise InputError(f"bad degree: {piece!r}") from exc
            elif piece.startswith("["):
                body = piece.strip("[]")
                try:
                    rows.append([int(x) for x in body.split(",") if x.strip()])
                except ValueError as exc:
                    raise InputError(f"bad generator: {piece!r}") from exc
            else:
                raise InputError(f"unrecognized field: {piece!r}")
        if degree is None:
            raise InputError("missing n=<degree> field")
        doc = InputDocument(degree=degree, generators=rows, names=None)
    doc.validate()
    return doc


def read_input(path: str) -> InputDocument:
    if path == "-":
        return parse_input(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_input(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def build_semigroup(doc: InputDocument, budget: int | None) -> TransformationSemigroup:
    effective = budget if budget is not None else (doc.budget or DEFAULT_BUDGET)
    return TransformationSemigroup.from_one_based(
        doc.generators, names=doc.names, budget=effective)


# -- reports -------------------------------------------------------------------


def skeleton_report(sk: Skeleton) -> str:
    out = []
    ts = sk.ts
    out.append(f"degree {ts.degree}, generators {len(ts.generators)}, "
               f"semigroup size {len(ts)}"
               + (" (monoid)" if ts.is_monoid else ""))
    out.append(f"extended image set: {len(sk.sets)} sets, "
               f"{len(sk.classes)} classes, {sk.levels} levels")
    out.append("sets:")
    for i in range(len(sk.sets)):
        rep = sk.rep_of[i]
        marks = []
        if rep == i:
            marks.append("rep")
        if i in sk.image_set:
            marks.append("image")
        suffix = f" ({', '.join(marks)})" if marks else ""
        out.append(f"  [{i}] {sk.set_str(i)} depth={sk.depth[i]} "
                   f"height={sk.height[i]} class_rep={sk.set_str(rep)}{suffix}")
    out.append("classes:")
    for members in sk.classes:
        sets = ", ".join(sk.set_str(u) for u in members)
        out.append(f"  {{{sets}}}")
    out.append("tiles of representatives:")
    for members in sk.classes:
        rep = members[0]
        if sk.card(rep) <= 1:
            continue
        for t in sk.tiles_of(rep):
            word = sk.word_to(rep, t)
            label = ts.word_str(word) if word is not None else "(not an image of it)"
            dotted = "" if t in sk.image_set else " [not an image]"
            out.append(f"  {sk.set_str(rep)} -> {sk.set_str(t)} via {label}{dotted}")
    return "\n".join(out) + "\n"


def skeleton_json(sk: Skeleton) -> dict:
    return {
        "degree": sk.ts.degree,
        "semigroup_size": len(sk.ts),
        "is_monoid": sk.ts.is_monoid,
        "levels": sk.levels,
        "sets": [
            {
                "set": sk.set_str(i),
                "depth": sk.depth[i],
                "height": sk.height[i],
                "representative": sk.set_str(sk.rep_of[i]),
                "is_image": i in sk.image_set,
                "tiles": ([sk.set_str(t) for t in sk.tiles_of(i)]
                          if sk.card(i) > 1 else []),
            }
            for i in range(len(sk.sets))
        ],
        "classes": [[sk.set_str(u) for u in members] for members in sk.classes],
    }


def _cycles(mapping: tuple[int, ...]) -> str:
    seen = [False] * len(mapping)
    parts = []
    for start in range(len(mapping)):
        if seen[start] or mapping[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        cur = mapping[start]
        while cur != start:
            cycle.append(cur)
            seen[cur] = True
            cur = mapping[cur]
        parts.append("(" + " ".join(str(c + 1) for c in cycle) + ")")
    return "".join(parts) if parts else "()"


def holonomy_report(system: HolonomyCascade) -> str:
    sk = system.sk
    dec = system.dec
    out = []
    for depth in range(1, sk.levels + 1):
        component = dec.component(depth)
        out.append(f"depth {depth}:")
        for j, rep in enumerate(component.reps):
            group = component.groups[j]
            tiles = ", ".join(sk.set_str(t) for t in component.tile_sets[j])
            out.append(f"  representative {sk.set_str(rep)}: tiles [{tiles}], "
                       f"group order {group.order}")
            for mapping, word in group.generators:
                out.append(f"    {_cycles(mapping)} from round trip "
                           f"{sk.ts.word_str(word)}")
        states = ", ".join(component.state_str(s) for s in component.states)
        out.append(f"  states: [{states}] (+ constants)")
    if sk.levels == 0:
        out.append("trivial skeleton: no levels")
    return "\n".join(out) + "\n"


def holonomy_json(system: HolonomyCascade) -> dict:
    sk = system.sk
    dec = system.dec
    return {
        "levels": sk.levels,
        "components": [
            {
                "depth": component.depth,
                "representatives": [
                    {
                        "set": sk.set_str(rep),
                        "tiles": [sk.set_str(t) for t in component.tile_sets[j]],
                        "group_order": component.groups[j].order,
                        "generators": [
                            {"cycles": _cycles(mapping),
                             "word": sk.ts.word_str(word)}
                            for mapping, word in component.groups[j].generators
                        ],
                    }
                    for j, rep in enumerate(component.reps)
                ],
                "states": [component.state_str(s) for s in component.states],
            }
            for component in dec.components
        ],
    }


def cascade_report(system: HolonomyCascade) -> str:
    sk = system.sk
    out = [holonomy_report(system).rstrip("\n")]
    chains = system.chains()
    out.append(f"maximal chains: {len(chains)}")
    coords = [system.encode(position(sk, c)) for c in chains]
    prefixes: list[list[tuple]] = [[] for _ in range(sk.levels)]
    for vector in coords:
        for level in range(1, sk.levels + 1):
            prefix = vector[:level - 1]
            if prefix not in prefixes[level - 1]:
                prefixes[level - 1].append(prefix)
    for cascade in system.cascades:
        out.append(f"generator {cascade.label}:")
        for level in range(1, sk.levels + 1):
            component = system.dec.component(level)
            for prefix in prefixes[level - 1]:
                element = cascade.dependency(level, prefix)
                if element.kind == "const":
                    desc = ("const *" if element.target == STAR
                            else "const " + component.state_str(element.target))
                else:
                    block = component.reps[element.block]
                    desc = f"perm of tiles({sk.set_str(block)}) {_cycles(element.mapping)}"
                shown = "()" if not prefix else system.coords_str(prefix)[1:-1]
                out.append(f"  level {level} at [{shown}]: {desc}")
    return "\n".join(out) + "\n"


# -- subcommands ---------------------------------------------------------------


def cmd_skeleton(args) -> int:
    doc = read_input(args.input)
    ts = build_semigroup(doc, args.budget)
    sk = Skeleton(ts)
    if args.json:
        print(json.dumps(skeleton_json(sk), indent=2, sort_keys=True))
    else:
        sys.stdout.write(skeleton_report(sk))
    if args.dot:
        from .holonomy import HolonomyDecomposition
        dec = HolonomyDecomposition(sk)
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(skeleton_dot(sk, dec))
    return EXIT_OK


def cmd_holonomy(args) -> int:
    doc = read_input(args.input)
    ts = build_semigroup(doc, args.budget)
    system = HolonomyCascade(ts)
    if args.json:
        print(json.dumps(holonomy_json(system), indent=2, sort_keys=True))
    else:
        sys.stdout.write(holonomy_report(system))
    return EXIT_OK


def cmd_cascade(args) -> int:
    doc = read_input(args.input)
    ts = build_semigroup(doc, args.budget)
    system = HolonomyCascade(ts, max_chains=args.max_chains)
    sys.stdout.write(cascade_report(system))
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = read_input(args.input)
    ts = build_semigroup(doc, args.budget)
    system = HolonomyCascade(ts, max_chains=args.max_chains)
    if args.inject_fault:
        system.inject_fault()
    seed = args.seed if args.seed is not None else (doc.seed or 0)
    embedding = system.verify_embedding(n_words=args.words, seed=seed)
    division = system.verify_division(n_words=args.words, seed=seed)
    elapsed = embedding.pop("elapsed") + division.pop("elapsed")
    report = {"embedding": embedding, "division": division}
    ok = (not embedding["violations"] and not division["violations"]
          and division["theta1_surjective"])
    report["ok"] = ok
    print(json.dumps(report, indent=2, sort_keys=True))
    print(f"# elapsed: {elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holodec",
        description="Holonomy decomposition of finite transformation semigroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="input file, or - for stdin")
        p.add_argument("--budget", type=int, default=None,
                       help="semigroup enumeration budget (default 1000000)")

    p_sk = sub.add_parser("skeleton", help="sets, classes, tiles, depths")
    common(p_sk)
    p_sk.add_argument("--json", action="store_true", help="JSON output")
    p_sk.add_argument("--dot", metavar="FILE", help="write a DOT diagram")
    p_sk.set_defaults(func=cmd_skeleton)

    p_h = sub.add_parser("holonomy", help="per-depth holonomy groups")
    common(p_h)
    p_h.add_argument("--json", action="store_true", help="JSON output")
    p_h.set_defaults(func=cmd_holonomy)

    p_c = sub.add_parser("cascade", help="components and dependency tables")
    common(p_c)
    p_c.add_argument("--max-chains", type=int, default=100000)
    p_c.set_defaults(func=cmd_cascade)

    p_v = sub.add_parser("verify", help="replay the embedding and division checks")
    common(p_v)
    p_v.add_argument("--words", type=int, default=1000)
    p_v.add_argument("--seed", type=int, default=None)
    p_v.add_argument("--max-chains", type=int, default=100000)
    p_v.add_argument("--inject-fault", action="store_true",
                     help="corrupt one dependency function (self-test)")
    p_v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
