"""Command-line interface.

Exit status: 0 all verdicts pass, 1 a verdict failed, 2 usage or input
error, 3 inconclusive (caps hit, residue field not split, depth limits).

Algebras are named by family shorthand (A2, A(3), B3, kronecker,
nakayama(3,2), local(2)), by a DSL file path, or "-" for stdin.
Modules are named by
  S<v> / P<v>          simple / projective at vertex v
  X<i>(<r>)            tube coordinate in the tube of --seed
  string:<word>        string module, e.g. "string:a1 a2"
  band:<word>:<lam>[:<m>]
  <file>.json          Rep JSON
optionally prefixed by omega:, omega-:, tau:, tau-: (applied right to left).
"""

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import fp
from .algebra import selfinjectivity_report
from .arknit import SWEEP_CAP, knit_component, tube_from_seed
from .dsl import parse_algebra, print_algebra
from .errors import (AlgebraMismatch, BadParameter, CapExceeded, ConditionFailed, DepthExceeded,
                     DslSyntaxError, FieldTooSmall, InvalidRep, InvalidWord, NonAdmissible,
                     NonComposable, NonConfluent, NonSplitResidue, NotFound, NotQuasiSerial,
                     NotSelfInjective, NotSpecialBiserial, ProjectiveInput,
                     UniverseIncomplete, UnknownVertex, ZeroParameter)
from .families import family_dsl
from .lemmas import REGISTRY, verify_lemma
from .rep import Rep
from .sms import (StratLadder, closure, ell, enumerate_sms, main_strat_certify,
                  replay, stable_universe, theorem_check)
from .stable import omega, omega_inv, semibrick_check, sthom, tau
from .strings import band_module, string_module

FIELD_ENV = "SMSLAB_FIELD"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

USAGE_ERRORS = (DslSyntaxError, BadParameter, InvalidRep, InvalidWord, AlgebraMismatch,
                UnknownVertex, NotSpecialBiserial, ZeroParameter, NonAdmissible, NonComposable,
                NonConfluent, NotSelfInjective, ProjectiveInput, FieldTooSmall)
INCONCLUSIVE_ERRORS = (CapExceeded, NonSplitResidue, DepthExceeded, UniverseIncomplete)


class UsageError(Exception):
    pass


# -- inputs --------------------------------------------------------------------

def default_field():
    raw = os.environ.get(FIELD_ENV)
    if raw is None:
        return 101
    try:
        p = int(raw)
    except ValueError:
        raise UsageError("%s=%r is not an integer" % (FIELD_ENV, raw)) from None
    if not fp.is_prime(p):
        raise UsageError("%s=%d is not prime" % (FIELD_ENV, p))
    return p


_FAMILY = re.compile(r"^(A|B|kronecker_trivext|kronecker|nakayama|local)\(?([\d,\s]*)\)?$")


def algebra_text(spec, p):
    """DSL text for a family shorthand, a DSL file, or "-" (stdin)."""
    if spec == "-":
        return sys.stdin.read()
    path = Path(spec)
    if path.is_file():
        return path.read_text()
    m = _FAMILY.match(spec.replace(" ", ""))
    if not m:
        raise UsageError("unknown algebra %r (family name or DSL file)" % spec)
    name, args = m.group(1), [int(x) for x in m.group(2).replace(",", " ").split()]
    need = {"A": 1, "B": 1, "kronecker": 0, "kronecker_trivext": 0, "nakayama": 2, "local": 1}
    if len(args) != need[name]:
        raise UsageError("family %s takes %d parameter(s)" % (name, need[name]))
    keys = {"A": ["n"], "B": ["n"], "nakayama": ["m", "l"], "local": ["t"]}.get(name, [])
    return family_dsl(name, p=p, **dict(zip(keys, args)))


def load_algebra(args):
    p = args.field or default_field()
    return parse_algebra(algebra_text(args.algebra, p), default_p=p)


_COORD = re.compile(r"^X(-?\d+)\((\d+)\)$")


def load_module(A, spec, tube=None):
    for prefix, op in (("omega-:", omega_inv), ("omega:", omega),
                       ("tau-:", lambda M: tau(M, -1)), ("tau:", tau)):
        if spec.startswith(prefix):
            return op(load_module(A, spec[len(prefix):], tube))
    if spec.endswith(".json"):
        return Rep.from_json(A, Path(spec).read_text())
    if spec.startswith("string:"):
        return string_module(A, spec[len("string:"):])
    if spec.startswith("band:"):
        parts = spec.split(":")
        if len(parts) not in (3, 4):
            raise UsageError("band spec is band:<word>:<lam>[:<m>]")
        return band_module(A, parts[1], int(parts[2]), int(parts[3]) if len(parts) == 4 else 1)
    m = _COORD.match(spec)
    if m:
        if tube is None:
            raise UsageError("tube coordinates need --seed or --seed-module")
        i, r = int(m.group(1)), int(m.group(2))
        tube.ensure_depth(r)
        return tube.module(i, r)
    if spec[:1] in ("S", "P") and len(spec) > 1:
        v = A.vertex(spec[1:])
        return A.simple(v) if spec[0] == "S" else A.projective(v)
    raise UsageError("cannot read module %r" % spec)


def seed_module(A, args):
    if getattr(args, "seed_module", None):
        return Rep.from_json(A, Path(args.seed_module).read_text())
    return load_module(A, args.seed or "S" + A.quiver.vertices[0])


def load_tube(A, args):
    return tube_from_seed(seed_module(A, args), depth=max(2, getattr(args, "depth", None) or 2),
                          max_dim=args.max_dim)


def parse_range(text):
    m = re.match(r"^(\d+)\.\.(\d+)$", text or "")
    if not m or int(m.group(1)) > int(m.group(2)) or int(m.group(1)) < 1:
        raise UsageError("range must look like 3..5")
    return int(m.group(1)), int(m.group(2))


# -- outputs -------------------------------------------------------------------

def dump_json(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def emit(args, data, dot=None, text=None):
    fmt = getattr(args, "format", "json")
    if fmt == "dot":
        if dot is None:
            raise UsageError("no DOT export for this subcommand")
        out = dot
    elif fmt == "text" and text is not None:
        out = text
    else:
        out = dump_json(data)
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(out)
        except OSError as e:
            raise UsageError("cannot write %s: %s" % (args.out, e)) from None
    else:
        sys.stdout.write(out)


def module_summary(M):
    return {"dims": list(M.dims), "dim": M.dim, "fingerprint": M.fingerprint()}


# -- subcommands ---------------------------------------------------------------

def cmd_example(args):
    p = args.field or default_field()
    sys.stdout.write(family_dsl(args.family, n=args.n, m=args.m, l=args.l, t=args.t, p=p))
    return EXIT_PASS


def cmd_parse(args):
    p = args.field or default_field()
    src = args.file or "-"
    text = sys.stdin.read() if src == "-" else Path(src).read_text()
    A = parse_algebra(text, default_p=p)
    sys.stdout.write(print_algebra(A))
    return EXIT_PASS


def cmd_info(args):
    A = load_algebra(args)
    rep = selfinjectivity_report(A)
    data = {"name": A.name, "field": A.p, "dim": A.dim, "vertices": list(A.quiver.vertices),
            "projective_dims": [A.projective(v).dim for v in range(A.n_vertices)]}
    data.update(rep.to_json())
    emit(args, data)
    return EXIT_PASS if rep.is_self_injective else EXIT_FAIL


def cmd_knit(args):
    A = load_algebra(args)
    C = knit_component(seed_module(A, args), max_dim=args.max_dim, max_nodes=args.max_nodes)
    data = C.to_json()
    data["complete"] = C.complete
    emit(args, data, dot=C.to_dot())
    return EXIT_PASS


def cmd_tube(args):
    A = load_algebra(args)
    try:
        T = load_tube(A, args)
    except NotQuasiSerial as e:
        args.format = "json"
        emit(args, {"quasi_serial": False, "reason": str(e)})
        return EXIT_FAIL
    T.ensure_depth(args.depth)
    seed = seed_module(A, args)
    data = T.to_json(args.depth)
    data.update({"quasi_serial": True, "seed_coords": list(T.locate(seed) or [])})
    emit(args, data, dot=T.to_dot(args.depth))
    return EXIT_PASS


def _tube_or_none(A, args):
    if args.seed or getattr(args, "seed_module", None):
        return load_tube(A, args)
    return None


def cmd_sthom(args):
    A = load_algebra(args)
    T = _tube_or_none(A, args)
    M, N = load_module(A, args.left, T), load_module(A, args.right, T)
    data = sthom(M, N).to_json()
    data.update({"left": module_summary(M), "right": module_summary(N)})
    emit(args, data, text="%d\n" % data["stable_dim"])
    return EXIT_PASS


def cmd_semibrick(args):
    A = load_algebra(args)
    T = _tube_or_none(A, args)
    S = [load_module(A, s, T) for s in args.modules]
    v = semibrick_check(S)
    emit(args, v.to_json())
    if v.suspended:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if v.is_semibrick else EXIT_FAIL


def cmd_closure(args):
    A = load_algebra(args)
    T = _tube_or_none(A, args)
    S = [load_module(A, s, T) for s in args.modules]
    st = closure(S, cap=args.cap, max_dim=args.max_dim, sweep_cap=args.sweep_cap)
    data = st.to_json()
    code = EXIT_PASS
    if args.target:
        X = load_module(A, args.target, T)
        n = ell(S, X, cap=args.cap, max_dim=args.max_dim, state=st)
        data["target"] = module_summary(X)
        data["ell"] = n.to_json() if hasattr(n, "to_json") else n
        if n is None or hasattr(n, "to_json"):
            code = EXIT_INCONCLUSIVE if not st.saturated else EXIT_FAIL
    emit(args, data)
    return code


def cmd_sms(args):
    A = load_algebra(args)
    U = stable_universe(A, max_dim=args.max_dim)
    found = enumerate_sms(A, U, cap=args.cap)
    data = {"algebra": A.name, "universe_size": len(U),
            "systems": [[module_summary(X) for X in S] for S in found]}
    emit(args, data)
    return EXIT_PASS


def _run_lemma(job):
    text, p, seed_spec, seed_json, lemma, depth, literal, lo, max_dim = job
    A = parse_algebra(text, default_p=p)
    seed = Rep.from_json(A, seed_json) if seed_json else load_module(A, seed_spec)
    T = tube_from_seed(seed, depth=2, max_dim=max_dim)
    rep = verify_lemma(T, lemma, depth, literal=literal).to_json()
    if lo > 1:
        keep = [r for r in rep["rows"] if r.get("params", {}).get("r", lo) >= lo]
        rep["rows"] = keep
        rep["checked"] = sum(1 for r in keep if not r.get("skipped"))
        rep["skipped"] = sum(1 for r in keep if r.get("skipped"))
        rep["notes"].append("rows with quasi-length below %d dropped" % lo)
    return rep


def cmd_verify(args):
    p = args.field or default_field()
    text = algebra_text(args.algebra, p)
    A = parse_algebra(text, default_p=p)
    lemmas = sorted(REGISTRY) if args.lemma == "all" else [args.lemma]
    for name in lemmas:
        if name not in REGISTRY:
            raise UsageError("unknown lemma %r; known: %s" % (name, ", ".join(sorted(REGISTRY))))
    lo, hi = parse_range(args.range) if args.range else (1, args.depth)
    seed_json = Path(args.seed_module).read_text() if args.seed_module else None
    seed_spec = args.seed or "S" + A.quiver.vertices[0]
    jobs = [(text, p, seed_spec, seed_json, name, hi, args.literal, lo, args.max_dim)
            for name in lemmas]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(_run_lemma, jobs))
    else:
        reports = [_run_lemma(j) for j in jobs]
    if not args.rows:
        for r in reports:
            r["rows"] = [row for row in r["rows"] if not row.get("ok")]
    emit(args, {"reports": reports},
         text="".join("%s %s checked=%d skipped=%d\n" % (r["lemma"], r["verdict"], r["checked"],
                                                         r["skipped"]) for r in reports))
    verdicts = {r["verdict"] for r in reports}
    if "fail" in verdicts:
        return EXIT_FAIL
    if verdicts - {"pass"}:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _system(A, T, spec, i):
    n = T.rank
    if spec == "quasi-simples":
        return [T.module(k, 1) for k in range(1, n + 1)]
    if spec == "xn":
        return [T.module(i, n)]
    return [load_module(A, s, T) for s in spec.split(",")]


def _write_certificate(args, cert):
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / ("certificate_%s.json" % cert.digest[:16])
    path.write_text(cert.dumps())
    return str(path)


def cmd_check(args):
    A = load_algebra(args)
    T = load_tube(A, args)
    S = _system(A, T, args.set, args.i)
    U = stable_universe(A, max_dim=args.max_dim) if args.universe else None
    rep = theorem_check(S, T, depth=args.ladder_depth, universe=U)
    data = rep.to_json()
    want = {"1": "theorem1 ladder", "2": "theorem2 ladder"}[args.theorem]
    if rep.certificate is not None:
        data["certificate_path"] = _write_certificate(args, rep.certificate)
    if rep.branch != want:
        data["notes"].append("branch %r taken instead of %r" % (rep.branch, want))
    emit(args, data)
    if rep.holds is None:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if rep.holds else EXIT_FAIL


def cmd_certify(args):
    A = load_algebra(args)
    T = load_tube(A, args)
    if args.ladder == "theorem1":
        L = StratLadder(T, args.i, "theorem1")
        S = _system(A, T, args.set or "quasi-simples", args.i)
    else:
        if not args.descent:
            raise UsageError("theorem2 ladders need --descent, e.g. 2 or 3,1")
        desc = tuple(int(x) for x in args.descent.split(","))
        if desc[0] != T.rank or any(a <= b for a, b in zip(desc, desc[1:])) or desc[-1] < 1:
            raise UsageError("descent must start at the rank %d and strictly decrease" % T.rank)
        L = StratLadder(T, args.i, "theorem2", desc)
        S = _system(A, T, args.set, args.i) if args.set else L.system_members()
    try:
        cert = main_strat_certify(L, S, depth=args.ladder_depth)
    except ConditionFailed as e:
        emit(args, {"certified": False, "reason": str(e), "step": e.step, "target": e.target})
        return EXIT_FAIL
    data = {"certified": True, "digest": cert.digest, "path": _write_certificate(args, cert)}
    emit(args, data)
    return EXIT_PASS


def cmd_replay(args):
    try:
        raw = Path(args.certificate).read_bytes()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (args.certificate, e)) from None
    rep = replay(raw)
    emit(args, rep.to_json())
    return EXIT_PASS if rep.ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------

def _common(p, algebra=True, seed=False, fmt=("json",)):
    p.add_argument("--field", type=int, help="field characteristic (default $%s or 101)" % FIELD_ENV)
    if algebra:
        p.add_argument("--algebra", required=True, help="family shorthand, DSL file, or -")
    if seed:
        p.add_argument("--seed", help="seed module spec (default: simple at the first vertex)")
        p.add_argument("--seed-module", help="seed module as Rep JSON file")
        p.add_argument("--max-dim", type=int, help="knitting dimension bound")
    p.add_argument("--format", choices=list(fmt), default=fmt[0])
    p.add_argument("--out", help="write output to a file instead of stdout")


def build_parser():
    ap = argparse.ArgumentParser(prog="smslab", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="emit the DSL text of a named family")
    p.add_argument("family")
    for k in ("n", "m", "l", "t"):
        p.add_argument("--" + k, type=int)
    p.add_argument("--field", type=int)
    p.set_defaults(func=cmd_example, parser=p)

    p = sub.add_parser("parse", help="parse DSL (file or stdin) and print it canonically")
    p.add_argument("file", nargs="?")
    p.add_argument("--field", type=int)
    p.set_defaults(func=cmd_parse, parser=p)

    p = sub.add_parser("info", help="self-injectivity report")
    _common(p)
    p.set_defaults(func=cmd_info, parser=p)

    p = sub.add_parser("knit", help="knit the AR component of a seed")
    _common(p, seed=True, fmt=("json", "dot"))
    p.add_argument("--max-nodes", type=int, default=400)
    p.set_defaults(func=cmd_knit, parser=p)

    p = sub.add_parser("tube", help="classify the component of a seed as a tube")
    _common(p, seed=True, fmt=("json", "dot"))
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_tube, parser=p)

    p = sub.add_parser("sthom", help="stable Hom dimension and basis")
    _common(p, seed=True, fmt=("json", "text"))
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_sthom, parser=p)

    p = sub.add_parser("semibrick", help="stable brick / orthogonality matrix")
    _common(p, seed=True)
    p.add_argument("modules", nargs="+")
    p.set_defaults(func=cmd_semibrick, parser=p)

    p = sub.add_parser("closure", help="bounded triangle-filtration closure")
    _common(p, seed=True)
    p.add_argument("modules", nargs="+")
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--target", help="module whose filtration length to report")
    p.add_argument("--sweep-cap", type=int, default=SWEEP_CAP,
                   help="bound on extension classes swept per cone")
    p.set_defaults(func=cmd_closure, parser=p)

    p = sub.add_parser("sms", help="simple-minded systems")
    p.add_argument("action", choices=["enumerate"])
    _common(p)
    p.add_argument("--cap", type=int, default=12)
    p.add_argument("--max-dim", type=int)
    p.set_defaults(func=cmd_sms, parser=p)

    p = sub.add_parser("verify", help="run lemma registry checks on a tube")
    _common(p, seed=True, fmt=("json", "text"))
    p.add_argument("--lemma", required=True, help="registry id or 'all'")
    p.add_argument("--depth", type=int, help="quasi-length bound (default 2n+2)")
    p.add_argument("--range", help="quasi-length window lo..hi")
    p.add_argument("--literal", action="store_true",
                   help="S_t-hom: apply the delta pattern to every row")
    p.add_argument("--rows", action="store_true", help="include passing rows")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify, parser=p)

    for name, func in (("check", cmd_check), ("certify", cmd_certify)):
        p = sub.add_parser(name, help="theorem check" if name == "check" else "ladder certificate")
        _common(p, seed=True)
        if name == "check":
            p.add_argument("--theorem", required=True, choices=["1", "2"])
            p.add_argument("--set", default="quasi-simples",
                           help="quasi-simples, xn, or comma-separated module specs")
            p.add_argument("--universe", action="store_true",
                           help="also knit the stable universe (finite type only)")
        else:
            p.add_argument("--ladder", required=True, choices=["theorem1", "theorem2"])
            p.add_argument("--descent", help="n,j_1,...,j_a for theorem2")
            p.add_argument("--set", help="system: quasi-simples, xn, or module specs")
        p.add_argument("--i", type=int, default=1)
        p.add_argument("--ladder-depth", type=int, default=6)
        p.add_argument("--out-dir", default="certificates")
        p.set_defaults(func=func, depth=None, parser=p)

    p = sub.add_parser("replay", help="re-verify a certificate")
    p.add_argument("certificate")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_replay, parser=p)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        getattr(args, "parser", ap).error(str(e))
    except USAGE_ERRORS as e:
        print("error: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return EXIT_USAGE
    except INCONCLUSIVE_ERRORS as e:
        print("inconclusive: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (NotQuasiSerial, NotFound, ConditionFailed) as e:
        print("failed: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return EXIT_FAIL
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
