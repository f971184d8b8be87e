"""d2gen command line: thin adapters over the library, one subcommand per capability.

Exit status: 0 ok / verified, 1 verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import augment, butterfly, digraph, earpath, generate, model, splitter
from .errors import (
    D2GenError,
    NoSuccessor,
    NotAMinor,
    NotStrongly2Connected,
    ParseError,
    PreconditionViolated,
    SimplicityViolation,
    TrichotomyViolation,
)

OK, FAIL, USAGE = 0, 1, 2


@dataclass
class CommandConfig:
    command: str
    args: argparse.Namespace
    jobs: int = 1


def _read(path: str) -> digraph.Digraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return digraph.parse(text)


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _model_for(args: argparse.Namespace, d: digraph.Digraph) -> model.ButterflyModel:
    if args.model:
        return model.parse_model(Path(args.model).read_text(), d)
    if args.pattern:
        m = model.find_expansion(_read(args.pattern), d)
        if m is None:
            raise NotAMinor("pattern is not a butterfly-minor of the host")
        return m
    raise ParseError("give --model or --pattern")


# -- subcommands --------------------------------------------------------------


def cmd_canon(cfg: CommandConfig) -> int:
    form = digraph.canonical_form(_read(cfg.args.digraph))
    _out(f"canonical: {form.key}")
    _out(digraph.serialize(form.to_digraph()))
    return OK


def cmd_check2(cfg: CommandConfig) -> int:
    k = cfg.args.k
    ok = digraph.is_strongly_k_connected(_read(cfg.args.digraph), k)
    label = "strongly-2-connected" if k == 2 else f"strongly-{k}-connected"
    _out(f"{label}: {_yes(ok)}")
    return OK if ok else FAIL


def cmd_invert(cfg: CommandConfig) -> int:
    _out(digraph.serialize(digraph.invert(_read(cfg.args.digraph))))
    return OK


def cmd_contract(cfg: CommandConfig) -> int:
    d = _read(cfg.args.digraph)
    _out(digraph.serialize(butterfly.butterfly_contract(d, (cfg.args.u, cfg.args.v))))
    return OK


def cmd_minor(cfg: CommandConfig) -> int:
    h, d = _read(cfg.args.h), _read(cfg.args.d)
    if cfg.args.backend == "model":
        found = model.find_expansion(h, d) is not None
        script = None
    else:
        res = butterfly.minor_search(h, d)
        found, script = res.found, res.script
    _out(f"butterfly-minor: {_yes(found)}")
    if found and cfg.args.witness and script is not None:
        Path(cfg.args.witness).write_text(butterfly.format_script(script))
    return OK if found else FAIL


def cmd_expand(cfg: CommandConfig) -> int:
    h, d = _read(cfg.args.h), _read(cfg.args.d)
    m = model.find_expansion(h, d)
    if m is None:
        _out("expansion: none")
        return FAIL
    _out(model.format_model(m))
    return OK


def cmd_augment(cfg: CommandConfig) -> int:
    d = _read(cfg.args.digraph)
    a = augment.parse_descriptor(cfg.args.descriptor)
    _out(digraph.serialize(augment.apply_augmentation(d, a)))
    return OK


def cmd_enumerate_aug(cfg: CommandConfig) -> int:
    d = _read(cfg.args.digraph)
    for a, g in augment.enumerate_augmentations(d, cfg.args.budget):
        _out(f"{a.text()}\t{digraph.canonical_form(g).key}")
    return OK


def cmd_earpaths(cfg: CommandConfig) -> int:
    d = _read(cfg.args.digraph)
    m = _model_for(cfg.args, d)
    for p in earpath.enumerate_earpaths(d, m):
        _out(str(p))
    return OK


def _class_text(c: earpath.EarPathClass) -> str:
    if isinstance(c, earpath.Switching):
        kind = "parallel" if c.parallel else "non-parallel"
        return f"switching ({c.edge[0]},{c.edge[1]}) {kind}"
    if isinstance(c, earpath.Bad):
        return f"bad {c.vertex}"
    return f"augmenting {c.variant} {c.u} {c.v}"


def cmd_classify(cfg: CommandConfig) -> int:
    d = _read(cfg.args.digraph)
    m = _model_for(cfg.args, d)
    dec = model.decorate(m)
    paths = (
        [earpath.EarPath.parse(cfg.args.path)] if cfg.args.path
        else earpath.enumerate_earpaths(d, m)
    )
    status = OK
    for p in paths:
        try:
            _out(f"{p}\t{_class_text(earpath.classify_earpath(p, dec, d))}")
        except TrichotomyViolation as exc:
            _out(f"{p}\tunclassifiable: {exc}")
            status = FAIL
    return status


def cmd_gen(cfg: CommandConfig) -> int:
    cs = generate.generate_closure(cfg.args.max_order, jobs=cfg.jobs)
    cs.save(cfg.args.out)
    for n, c in cs.counts().items():
        _out(f"order {n}: {c}")
    _out(f"members: {len(cs.members)}")
    return OK


def cmd_oracle(cfg: CommandConfig) -> int:
    forms = generate.oracle_enumerate(cfg.args.max_order)
    counts: dict[int, int] = {}
    for f in forms:
        counts[f.n] = counts.get(f.n, 0) + 1
    for n in sorted(counts):
        _out(f"order {n}: {counts[n]}")
    _out(f"total: {len(forms)}")
    if cfg.args.list:
        for f in sorted(forms):
            _out(f.key)
    return OK


def cmd_verify_gen(cfg: CommandConfig) -> int:
    rep = generate.verify_generation(cfg.args.max_order, jobs=cfg.jobs)
    for line in rep.lines():
        _out(line)
    return OK if rep.equal else FAIL


def cmd_base_minor(cfg: CommandConfig) -> int:
    ok, witness = generate.contains_base_minor(_read(cfg.args.digraph))
    _out(f"base-minor: {_yes(ok)}")
    if witness is not None:
        _out(f"witness: {digraph.canonical_form(witness).key}")
    return OK if ok else FAIL


def cmd_splitter(cfg: CommandConfig) -> int:
    h, d = _read(cfg.args.h), _read(cfg.args.d)
    seq = splitter.find_sequence(h, d)
    text = seq.dumps()
    if cfg.args.out:
        Path(cfg.args.out).write_text(text)
    for a in seq.augmentations:
        _out(a.text())
    _out(f"steps: {len(seq)}")
    return OK


def cmd_validate_seq(cfg: CommandConfig) -> int:
    seq = splitter.AugmentationSequence.loads(Path(cfg.args.seq).read_text())
    rep = splitter.validate_sequence(seq, _read(cfg.args.h), _read(cfg.args.d))
    _out(f"sequence: {'valid' if rep else 'invalid'}")
    if not rep:
        _out(f"clause: {rep.clause}")
        _out(f"detail: {rep.detail}")
    return OK if rep else FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="d2gen", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=1, help="worker processes for closure and sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable[[CommandConfig], int], help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("canon", cmd_canon, "print canonical form").add_argument("digraph")
    sp = add("check2", cmd_check2, "test strong k-connectivity")
    sp.add_argument("digraph")
    sp.add_argument("--k", type=int, default=2)
    add("invert", cmd_invert, "reverse every edge").add_argument("digraph")
    sp = add("contract", cmd_contract, "butterfly-contract edge (u,v)")
    sp.add_argument("digraph")
    sp.add_argument("u", type=int)
    sp.add_argument("v", type=int)
    sp = add("minor", cmd_minor, "test whether H is a butterfly-minor of D")
    sp.add_argument("h")
    sp.add_argument("d")
    sp.add_argument("--witness", help="write the delete/contract script here")
    sp.add_argument("--backend", choices=("bfs", "model"), default="bfs")
    sp = add("expand", cmd_expand, "find a butterfly model of H in D")
    sp.add_argument("h")
    sp.add_argument("d")
    sp = add("augment", cmd_augment, "apply one augmentation descriptor")
    sp.add_argument("digraph")
    sp.add_argument("--descriptor", required=True)
    sp = add("enumerate-aug", cmd_enumerate_aug, "list every augmentation within a vertex budget")
    sp.add_argument("digraph")
    sp.add_argument("--budget", type=int, required=True)
    for name, fn, help_ in (
        ("earpaths", cmd_earpaths, "list ear-paths of an expansion"),
        ("classify", cmd_classify, "classify ear-paths of an expansion"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("digraph")
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--model", help="model file ('model v1' format)")
        src.add_argument("--pattern", help="pattern digraph; a model is searched for")
        if name == "classify":
            sp.add_argument("--path", help="classify only this vertex sequence")
    sp = add("gen", cmd_gen, "build the generation closure")
    sp.add_argument("--max-order", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp = add("oracle", cmd_oracle, "exhaustive census of strongly 2-connected digraphs")
    sp.add_argument("--max-order", type=int, required=True)
    sp.add_argument("--list", action="store_true", help="also print every canonical key")
    sp = add("verify-gen", cmd_verify_gen, "compare closure with oracle")
    sp.add_argument("--max-order", type=int, required=True)
    add("base-minor", cmd_base_minor, "find a base-class minor").add_argument("digraph")
    sp = add("splitter", cmd_splitter, "augmentation sequence from H up to D")
    sp.add_argument("h")
    sp.add_argument("d")
    sp.add_argument("--out", help="write the sequence file here")
    sp = add("validate-seq", cmd_validate_seq, "re-check a sequence file")
    sp.add_argument("seq")
    sp.add_argument("h")
    sp.add_argument("d")
    return p


# verification failures (1) versus bad input (2)
_FAILURES = (NotAMinor, NotStrongly2Connected, NoSuccessor)
_INPUT = (ParseError, PreconditionViolated, SimplicityViolation, ValueError, OSError)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.jobs < 1:
        parser.print_usage(sys.stderr)
        print("d2gen: --jobs must be positive", file=sys.stderr)
        return USAGE
    cfg = CommandConfig(args.command, args, args.jobs)
    try:
        return args.fn(cfg)
    except _FAILURES as exc:
        _out(f"error: {exc}")
        return FAIL
    except (_INPUT + (D2GenError,)) as exc:
        print(f"d2gen: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
