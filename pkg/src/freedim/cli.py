"""Command-line front end.

Exit status: 0 on success (verdict pass or none), 1 on a failing verdict,
2 on usage, parse or module errors.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from itertools import combinations
from pathlib import Path
from typing import Callable

import numpy as np

from . import algebras, coverlab, setsys
from .documents import Document, DocumentError, parse_document
from .report import Report

COMMANDS: dict[str, Callable[[argparse.Namespace, list[Document]], Report]] = {}
HELP: dict[str, str] = {}


class UsageError(Exception):
    pass


def command(name: str, help: str):
    def register(fn):
        COMMANDS[name] = fn
        HELP[name] = help
        return fn
    return register


def _ints(text: str | None) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _one(docs: list[Document], *kinds: str) -> Document:
    if len(docs) != 1:
        raise UsageError(f"expected exactly one input document, got {len(docs)}")
    if docs[0].kind not in kinds:
        raise UsageError(f"expected a {' or '.join(kinds)} document, got {docs[0].kind}")
    return docs[0]


def _family(doc: Document) -> setsys.SetFamily:
    if doc.kind == "chaincuts":
        return algebras.chain_initial_segments(doc.payload)
    return doc.payload


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _param(args, docs, name, required=True):
    v = getattr(args, name, None)
    if v is None:
        for d in docs:
            if d.kind == "instanceparams" and name in d.payload:
                v = d.payload[name]
    if v is None and required:
        raise UsageError(f"missing --{name}")
    return v


@command("atoms", "atoms of the generated subalgebra")
def cmd_atoms(args, docs):
    fam = _family(_one(docs, "setsystem", "chaincuts"))
    rep = Report("atoms", ["atom", "signature", "size", "points"])
    for i, (c, sig) in enumerate(setsys.atoms(fam)):
        rep.add(i, "".join(map(str, sig)), len(c), c)
    return rep


@command("indep", "test independence of --indices")
def cmd_indep(args, docs):
    fam = _family(_one(docs, "setsystem", "chaincuts"))
    idx = _ints(args.indices)
    rep = Report("indep", ["indices", "independent"])
    rep.add(sorted(set(idx)), setsys.is_independent(fam, idx))
    return rep


@command("vc", "independence number, witness and irredundance")
def cmd_vc(args, docs):
    fam = _family(_one(docs, "setsystem", "chaincuts"))
    k, wit = setsys.independence_number(fam)
    irred, bad = setsys.is_irredundant(fam)
    rep = Report("vc", ["members", "independence_number", "witness", "atoms", "irredundant",
                        "redundant_member"])
    rep.add(len(fam), k, wit, len(setsys.atoms(fam)), irred, bad)
    return rep


@command("sauer", "find a shattered (d+1)-set in a trace")
def cmd_sauer(args, docs):
    doc = _one(docs, "trace", "setsystem", "chaincuts")
    trace = doc.payload if doc.kind == "trace" else setsys.realized_trace(_family(doc))
    d = _param(args, docs, "d")
    s = setsys.sauer_shelah_find(trace, d)
    bound = setsys.binomial_bound(trace.length, d)
    rep = Report("sauer", ["length", "d", "patterns", "bound", "exceeds_bound", "shattered"])
    rep.add(trace.length, d, len(trace), bound, len(trace) > bound, s)
    return rep


@command("heindorf", "pairwise comparable-or-disjoint check")
def cmd_heindorf(args, docs):
    fam = _family(_one(docs, "setsystem", "chaincuts"))
    ok, pair = algebras.heindorf_check(fam)
    rep = Report("heindorf", ["members", "comparable_or_disjoint", "offending_pair"])
    rep.add(len(fam), ok, pair)
    rep.verdict = _verdict(ok)
    return rep


@command("ica-check", "atom bound for initial chains of a pseudotree")
def cmd_ica(args, docs):
    tree = _one(docs, "pseudotree").payload
    picks = _ints(args.picks) if args.picks is not None else list(range(len(tree)))
    try:
        r = algebras.ica_bound_report(tree, picks)
    except IndexError as e:
        raise UsageError(str(e)) from None
    rep = Report("ica-check", ["nodes", "picks", "atoms", "bound", "holds", "vacuous"])
    rep.add(len(tree), len(picks), r.atom_count, r.bound, r.holds, r.vacuous)
    rep.verdict = _verdict(r.holds)
    return rep


@command("free-product", "cylinder family of the factors, atom and independence laws")
def cmd_free_product(args, docs):
    if not docs:
        raise UsageError("free-product needs at least one setsystem document")
    factors = [_family(d) for d in docs]
    prod = algebras.free_product(factors)
    rep = Report("free-product", ["factor", "ground_size", "members", "atoms", "independence_number"])
    atom_prod, indep_sum = 1, 0
    for i, f in enumerate(factors):
        a, k = len(setsys.atoms(f)), setsys.independence_number(f)[0]
        atom_prod *= a
        indep_sum += k
        rep.add(str(i), f.ground_size, len(f), a, k)
    pa, pk = len(setsys.atoms(prod.family)), setsys.independence_number(prod.family)[0]
    rep.add("product", prod.family.ground_size, len(prod.family), pa, pk)
    rep.verdict = _verdict(pa == atom_prod and pk == indep_sum)
    return rep


@command("certify", "certify no d+1 independent members")
def cmd_certify(args, docs):
    fam = _family(_one(docs, "setsystem", "chaincuts"))
    d = _param(args, docs, "d")
    cert = algebras.certify_class_d(fam, d)
    rep = Report("certify", ["members", "d", "verified", "counterexample"])
    rep.add(len(fam), d, cert.verified, cert.counterexample)
    rep.verdict = _verdict(cert.verified)
    return rep


def _growth_rows(args, fam, d):
    rng = np.random.default_rng(args.seed)
    sizes = _ints(args.sizes) if args.sizes else sorted({0, 1, len(fam) // 2, len(fam)})
    if any(k > len(fam) for k in sizes):
        raise UsageError(f"subset sizes {sizes} exceed the {len(fam)} members")
    subsets = algebras.sample_subsets(len(fam), sizes, args.per_size, rng)
    return algebras.growth_bound_report(fam, d, subsets)


@command("growth-report", "atoms of sampled subfamilies against the growth bounds")
def cmd_growth(args, docs):
    fam = _family(_one(docs, "setsystem", "chaincuts"))
    d = _param(args, docs, "d")
    report = _growth_rows(args, fam, d)
    rep = Report("growth-report", ["subset", "size", "atoms", "binomial_bound", "poly_bound", "holds"])
    for r in report.rows:
        rep.add(r.subset, r.size, r.atoms, r.binomial, r.polynomial, r.holds)
    # bounds are only claimed for certified families
    if report.certified:
        rep.verdict = _verdict(report.holds)
    return rep


def _witness(docs) -> coverlab.GrowthWitness:
    return _one(docs, "coverfamily").payload


def _cover_index(args, w) -> list[int]:
    idx = _ints(args.covers) if args.covers else list(range(len(w.family)))
    for i in idx:
        if not 0 <= i < len(w.family):
            raise UsageError(f"cover index {i} out of range")
    return idx


@command("refine", "canonical joint refinement of covers")
def cmd_refine(args, docs):
    w = _witness(docs)
    chosen = [w.family[i] for i in _cover_index(args, w)]
    if w.interval:
        joint = coverlab.interval_joint_refinement(chosen[0].ground_size, chosen)
    else:
        joint = coverlab.atoms_refinement(chosen)
    rep = Report("refine", ["cell", "size", "points"])
    for i, c in enumerate(sorted(joint.cells, key=sorted)):
        rep.add(i, len(c), c)
    return rep


@command("push", "image covers under --map")
def cmd_push(args, docs):
    w = _witness(docs)
    mapping = _ints(args.map)
    target = args.target_size if args.target_size is not None else max(mapping, default=-1) + 1
    rep = Report("push", ["cover", "cells_before", "cells_after", "cells"])
    for i in _cover_index(args, w):
        out = coverlab.push_cover(mapping, target, w.family[i])
        rep.add(i, len(w.family[i]), len(out), " | ".join(" ".join(map(str, sorted(c))) for c in out.cells))
    return rep


@command("restrict", "trace covers on --subset")
def cmd_restrict(args, docs):
    w = _witness(docs)
    subset = _ints(args.subset)
    rep = Report("restrict", ["cover", "cells_before", "cells_after", "cells"])
    for i in _cover_index(args, w):
        out = coverlab.restrict_cover(w.family[i], subset)
        rep.add(i, len(w.family[i]), len(out), " | ".join(" ".join(map(str, sorted(c))) for c in out.cells))
    return rep


@command("witness-check", "check M*(sum chi)^d budgets on cover tuples")
def cmd_witness(args, docs):
    w = _witness(docs)
    if args.tuples:
        tuples = [_ints(t) for t in args.tuples.split(";")]
    else:
        tuples = [(i,) for i in range(len(w.family))] + \
                 [tuple(t) for t in combinations(range(len(w.family)), 2)]
        if len(w.family) > 2:
            tuples.append(tuple(range(len(w.family))))
    rows = coverlab.witness_check(w, tuples)
    rep = Report("witness-check", ["covers", "joint_size", "budget", "pass"])
    for r in rows:
        rep.add(r.covers, r.joint_size, r.budget, r.passed)
    rep.verdict = _verdict(all(r.passed for r in rows))
    return rep


@command("separated", "indicator family separating n+1 points")
def cmd_separated(args, docs):
    n = _param(args, docs, "n")
    inst = coverlab.separated_family(n)
    rep = Report("separated", ["function"] + [f"x{j + 1}" for j in range(len(inst))])
    for k, f in enumerate(inst.functions):
        rep.add(f"f{k + 1}", *f)
    rep.verdict = _verdict(inst.unseparated_pair() is None)
    return rep


@command("grid-demo", "separated grid instance and its good-cover floor")
def cmd_grid(args, docs):
    d, n, p = (_param(args, docs, k) for k in ("d", "n", "p"))
    inst = coverlab.build_grid_instance(d, n, p)
    singles = coverlab.good_cover_floor(inst, coverlab.Cover.singletons(len(inst)))
    whole = coverlab.good_cover_floor(inst, coverlab.Cover.trivial(len(inst)))
    rep = Report("grid-demo", ["d", "n", "p", "points", "functions", "separated",
                               "singletons_good", "whole_good", "floor_respected"])
    ok = inst.unseparated_pair() is None
    floor = singles.floor_respected and whole.floor_respected
    rep.add(d, n, p, len(inst), len(inst.functions), ok, singles.good, whole.good, floor)
    rep.verdict = _verdict(ok and floor and singles.good and (len(inst) < 2 or not whole.good))
    return rep


@command("counting", "evaluate the counting inequality")
def cmd_counting(args, docs):
    vals = {k: _param(args, docs, k) for k in ("d", "m", "m1", "p", "n")}
    try:
        r = coverlab.counting_check(coverlab.CountingParams(**vals))
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = Report("counting", ["d", "m", "m1", "p", "n", "lhs", "rhs", "holds"])
    rep.add(*vals.values(), r.lhs, r.rhs, r.holds)
    rep.verdict = "holds" if r.holds else "fail"
    return rep


@command("find-n", "least n where the counting inequality holds")
def cmd_find_n(args, docs):
    vals = {k: _param(args, docs, k) for k in ("d", "m", "m1", "p")}
    limit = args.limit if args.limit is not None else 10 ** 6
    try:
        n = coverlab.find_min_n(**vals, limit=limit)
    except ValueError as e:
        raise UsageError(str(e)) from None
    d, m = vals["d"], vals["m"]
    rep = Report("find-n", ["d", "m", "m1", "p", "limit", "p_plus_1_exceeds_md_pow_d", "n"])
    rep.add(*vals.values(), limit, vals["p"] + 1 > (m * d) ** d, n)
    return rep


@command("exponent", "log-log growth exponent")
def cmd_exponent(args, docs):
    if args.samples:
        try:
            samples = [tuple(int(v) for v in s.split(":")) for s in args.samples.split(",")]
        except ValueError:
            raise UsageError("samples look like budget:joint,budget:joint,...") from None
    else:
        fam = _family(_one(docs, "setsystem", "chaincuts"))
        report = _growth_rows(args, fam, _param(args, docs, "d", required=False) or 1)
        samples = [(r.size, r.atoms) for r in report.rows if r.size >= 2]
    rep = Report("exponent", ["samples", "exponent"])
    rep.add(len(samples), f"{coverlab.exponent_fit(samples):.6f}")
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="JSON documents ('-' for stdin)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--limit", type=int)
    common.add_argument("--out", type=Path)
    for name in ("d", "n", "p", "m", "m1", "target-size"):
        common.add_argument(f"--{name}", type=int)
    for name in ("indices", "picks", "sizes", "covers", "map", "subset", "tuples", "samples"):
        common.add_argument(f"--{name}")
    common.add_argument("--per-size", type=int, default=4)

    parser = argparse.ArgumentParser(prog="freedim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name])
    return parser


def _read_docs(paths: list[str]) -> list[Document]:
    docs = []
    for p in paths:
        if p == "-":
            docs.append(parse_document(sys.stdin.read(), "<stdin>"))
        else:
            try:
                text = Path(p).read_text()
            except OSError as e:
                raise UsageError(f"cannot read {p}: {e.strerror}") from None
            docs.append(parse_document(text, p))
    return docs


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            docs = _read_docs(args.inputs)
            rep = COMMANDS[args.command](args, docs)
        except (UsageError, DocumentError, ValueError, IndexError) as e:
            _flush(caught)
            print(f"freedim {args.command}: error: {e}", file=sys.stderr)
            return 2
    _flush(caught)
    out = rep.render(args.format)
    if args.out:
        args.out.write_text(out)
    else:
        sys.stdout.write(out)
    return 1 if rep.verdict == "fail" else 0


def _flush(caught) -> None:
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
