"""coproof CLI — prove / check / translate / check-ifol / colp / model / invariant / classify."""

import argparse
import json
import logging
import sys
from pathlib import Path

from .. import __version__
from . import config
from .errors import CoproofError, NotAnAtom, ProofError, ProofFormatError, UsageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


# ── Helpers ───────────────────────────────────────────────────────

def _setup_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="[%(asctime)s] %(levelname)s %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def _emit(args, text_lines, data) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        for line in text_lines:
            print(line)


def _source(args):
    from ..syntax import load_source
    return load_source(args.file)


def _logic(args, source):
    from ..logic.classify import LogicId
    if getattr(args, "logic", None):
        try:
            return LogicId.parse(args.logic)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return source.logic or LogicId.COHOHH_FIX


def _lemmas(args, source):
    from ..syntax import parse_formula
    if getattr(args, "lemma", None):
        return [parse_formula(text, source.signature, source.defs) for text in args.lemma]
    return list(source.lemmas)


def _program(args, source):
    from ..prover.search import with_lemmas
    return with_lemmas(source.program, _lemmas(args, source))


def _load_proof(args, source, kind):
    from ..ifol.proofs import IFolProof
    from ..prover.proofs import CupProof
    from ..syntax import load_proof
    proof = load_proof(args.proof, source.signature, source.defs)
    want = CupProof if kind == "cup" else IFolProof
    if not isinstance(proof, want):
        raise ProofFormatError(f"{args.proof} does not hold a {kind} proof")
    return proof


def _write(args, proof, stem: str) -> None:
    from ..syntax import save_proof
    if args.out:
        save_proof(proof, args.out)
    elif args.save:
        config.PROOFS_DIR.mkdir(parents=True, exist_ok=True)
        save_proof(proof, config.PROOFS_DIR / f"{stem}.json")


# ── Commands ──────────────────────────────────────────────────────

def cmd_prove(args) -> int:
    """Search for a CUP proof of the goal, lemmas first."""
    from ..prover.search import SearchConfig, search
    from ..syntax import dumps_proof, parse_formula, show_cup_proof, show_formula

    source = _source(args)
    if args.goal:
        goal = parse_formula(args.goal, source.signature, source.defs)
    elif source.goals:
        goal = source.goals[0]
    else:
        raise UsageError("no goal: pass --goal or add a goal directive")
    logic = _logic(args, source)
    depth = args.depth if args.depth is not None else config.MAX_DEPTH
    sig, defs = source.signature, source.defs

    proven = []
    steps = _lemmas(args, source) + [goal]
    for i, target in enumerate(steps):
        cfg = SearchConfig(logic, depth, lemmas=tuple(steps[:i]))
        result = search(sig, source.program, target, cfg)
        if not result:
            print(f"EXHAUSTED {show_formula(target, defs)} (depth {result.depth})")
            return EXIT_NEGATIVE
        proven.append((target, result))

    if args.json:
        print(dumps_proof(proven[-1][1]))
    else:
        for target, proof in proven:
            role = "goal" if target is goal else "lemma"
            print(f"{role}: {show_formula(target, defs)}")
            for line in show_cup_proof(proof, defs):
                print(line)
    _write(args, proven[-1][1], Path(args.file).stem)
    return EXIT_OK


def cmd_check(args) -> int:
    """Check a CUP proof file against the program (plus lemmas)."""
    from ..prover.checker import check_proof

    source = _source(args)
    proof = _load_proof(args, source, "cup")
    logic = _logic(args, source) if args.logic or source.logic else None
    check_proof(source.signature, _program(args, source), proof, logic)
    _emit(args, ["OK"], {"verdict": "ok"})
    return EXIT_OK


def cmd_translate(args) -> int:
    """Translate a CUP proof into iFOL▷ and check the result."""
    from ..ifol.translate import check_translation, translate
    from ..syntax import dumps_proof, show_ifol_proof

    source = _source(args)
    proof = _load_proof(args, source, "cup")
    sig, p = source.signature, _program(args, source)
    result = translate(sig, p, proof)
    check_translation(sig, p, proof, result)
    if args.json:
        print(dumps_proof(result))
    else:
        for line in show_ifol_proof(result, source.defs):
            print(line)
    _write(args, result, f"{Path(args.file).stem}.ifol")
    return EXIT_OK


def cmd_check_ifol(args) -> int:
    """Check an iFOL▷ proof file."""
    from ..ifol.checker import check_ifol_proof

    source = _source(args)
    proof = _load_proof(args, source, "ifol")
    check_ifol_proof(source.signature, proof)
    _emit(args, ["OK"], {"verdict": "ok"})
    return EXIT_OK


def cmd_colp(args) -> int:
    """Answer atomic queries by coinductive SLD resolution."""
    from ..prover.colp import colp_solve
    from ..syntax import parse_query, show_formula, show_term

    source = _source(args)
    if args.query:
        queries = [parse_query(text, source.signature, source.defs) for text in args.query]
    elif source.queries:
        queries = source.queries
    else:
        raise UsageError("no query: pass --query or add a query directive")

    p = _program(args, source)
    lines, data, failed = [], [], False
    for q in queries:
        answer = colp_solve(source.signature, p, q, args.bound)
        failed = failed or not answer
        text = str(answer)
        lines.append(text if len(queries) == 1 else f"{show_formula(q)}: {text}")
        data.append({
            "query": show_formula(q),
            "answer": ({name: show_term(t, annotate=False) for name, t in answer.as_dict().items()}
                       if answer else None),
        })
    _emit(args, lines, data)
    return EXIT_NEGATIVE if failed else EXIT_OK


def cmd_model(args) -> int:
    """Truncated-model membership of an atom, or the whole truncated model."""
    from ..herbrand.model import list_model, model_member
    from ..logic.formulas import Atom
    from ..syntax import parse_formula, show_formula

    source = _source(args)
    p = _program(args, source)
    k = args.depth if args.depth is not None else config.TRUNCATION_DEPTH
    if not args.atom:
        lines = list_model(p, k)
        _emit(args, lines, {"depth": k, "model": lines})
        return EXIT_OK
    atom = parse_formula(args.atom, source.signature, source.defs)
    if not isinstance(atom, Atom):
        raise NotAnAtom(f"--atom expects an atom, got {show_formula(atom)}")
    member = model_member(p, atom, k)
    verdict = "MEMBER" if member else "NOT-MEMBER"
    _emit(args, [verdict], {"atom": show_formula(atom), "depth": k, "member": member})
    return EXIT_OK if member else EXIT_NEGATIVE


def _theta0(text: str, source) -> dict:
    from ..syntax import parse_term
    mapping = {}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        name, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"expected name=term in --theta0, got {part!r}")
        mapping[name.strip()] = parse_term(value, source.signature, source.defs)
    return mapping


def cmd_invariant(args) -> int:
    """Extract the invariant of a coinductive proof and check it."""
    from ..herbrand.invariant import check_invariant, extract_invariant

    source = _source(args)
    proof = _load_proof(args, source, "cup")
    p = _program(args, source)
    k = args.depth if args.depth is not None else config.TRUNCATION_DEPTH
    inv = extract_invariant(source.signature, proof, _theta0(args.theta0, source), args.len)
    failure = check_invariant(p, inv, k, args.len)
    verdict = "OK" if failure is None else str(failure)
    _emit(args, inv.describe() + [verdict], {
        "invariant": inv.describe(), "depth": k, "len": inv.len_bound,
        "counterexample": None if failure is None else str(failure.atom),
    })
    return EXIT_OK if failure is None else EXIT_NEGATIVE


def _atom_classes(sig, phi, ctx=()):
    from ..kernel.signature import ctx_extend
    from ..logic.classify import classify_atom
    from ..logic.formulas import And, Atom, Exists, Forall, Imp, Later, Or
    if isinstance(phi, Atom):
        yield ctx, phi, classify_atom(sig, ctx, phi)
    elif isinstance(phi, (And, Or, Imp)):
        yield from _atom_classes(sig, phi.left, ctx)
        yield from _atom_classes(sig, phi.right, ctx)
    elif isinstance(phi, (Forall, Exists)):
        yield from _atom_classes(sig, phi.body, ctx_extend(ctx, phi.hint, phi.ty))
    elif isinstance(phi, Later):
        yield from _atom_classes(sig, phi.body, ctx)


def cmd_classify(args) -> int:
    """Place a formula in the cube of logics."""
    from ..logic.classify import LogicId, is_coinduction_goal, is_d_formula, is_g_formula
    from ..syntax import parse_formula, show_formula

    source = _source(args)
    sig = source.signature
    phi = parse_formula(args.formula, sig, source.defs)
    rows = []
    for logic in LogicId:
        rows.append({
            "logic": logic.value,
            "d": is_d_formula(logic, phi, sig),
            "g": is_g_formula(logic, phi, sig),
            "coinduction": is_coinduction_goal(logic, phi, sig),
        })
    atoms = []
    for ctx, a, cls in _atom_classes(sig, phi):
        names = tuple(name for name, _ in ctx)
        atoms.append({"atom": show_formula(a, names=names), "first_order": cls.first_order,
                      "guarded": cls.guarded, "simple": cls.simple})

    def yn(b: bool) -> str:
        return "yes" if b else "no"

    lines = [f"{r['logic']:<11} D:{yn(r['d']):<4} G:{yn(r['g']):<4} goal:{yn(r['coinduction'])}"
             for r in rows]
    lines += [f"atom {a['atom']}: first-order={yn(a['first_order'])} "
              f"guarded={yn(a['guarded'])} simple={yn(a['simple'])}" for a in atoms]
    _emit(args, lines, {"logics": rows, "atoms": atoms})
    return EXIT_OK


# ── Entry point ───────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coproof",
        description="Coinductive uniform proofs for logic programs",
    )
    parser.add_argument("--version", action="version", version=f"coproof {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for INFO, -vv for DEBUG logging")
    parser.add_argument("--json", action="store_true", help="Structured output")

    sub = parser.add_subparsers(dest="command")

    def with_file(name, help_text, proof=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="Source file (.clp); bundled corpus names also work")
        if proof:
            p.add_argument("proof", help="Proof file (JSON)")
        p.add_argument("--lemma", action="append", help="Extra clause (repeatable)")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="Structured output")
        return p

    def with_output(p):
        p.add_argument("-o", "--out", help="Write the proof as JSON to this path")
        p.add_argument("--save", action="store_true", help="Write the proof under the proofs directory")

    p_prove = with_file("prove", "Search for a coinductive uniform proof")
    p_prove.add_argument("--goal", help="Goal formula (default: the file's goal directive)")
    p_prove.add_argument("--logic", help="Logic of the cube (default: directive or cohohh_fix)")
    p_prove.add_argument("--depth", type=int, help="Bound on resolution steps")
    with_output(p_prove)

    p_check = with_file("check", "Check a CUP proof", proof=True)
    p_check.add_argument("--logic", help="Also require the proof to stay within this logic")

    p_translate = with_file("translate", "Translate a CUP proof into iFOL▷", proof=True)
    with_output(p_translate)

    with_file("check-ifol", "Check an iFOL▷ proof", proof=True)

    p_colp = with_file("colp", "Coinductive SLD resolution")
    p_colp.add_argument("--query", action="append", help="Atomic query (repeatable)")
    p_colp.add_argument("--bound", type=int, help="Resolution depth bound")

    p_model = with_file("model", "Truncated greatest Herbrand model")
    p_model.add_argument("--atom", help="Ground atom to test (default: list the model)")
    p_model.add_argument("--depth", type=int, help="Truncation depth k")

    p_inv = with_file("invariant", "Extract and check a proof's invariant", proof=True)
    p_inv.add_argument("--theta0", default="", help="Base substitution, e.g. 'c=0,d=s 0'")
    p_inv.add_argument("--depth", type=int, help="Truncation depth k")
    p_inv.add_argument("--len", type=int, help="Bound on substitution-word length")

    p_classify = with_file("classify", "Classify a formula in the cube of logics")
    p_classify.add_argument("--formula", required=True, help="Formula to classify")

    return parser


COMMANDS = {
    "prove": cmd_prove,
    "check": cmd_check,
    "translate": cmd_translate,
    "check-ifol": cmd_check_ifol,
    "colp": cmd_colp,
    "model": cmd_model,
    "invariant": cmd_invariant,
    "classify": cmd_classify,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)

    if args.command not in COMMANDS:
        parser.print_help()
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except ProofError as e:
        logger.warning(f"{args.command}: {e.category}")
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return EXIT_NEGATIVE
    except CoproofError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
