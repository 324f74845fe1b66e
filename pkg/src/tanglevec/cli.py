"""Command-line front end.

Machine-readable JSON goes to stdout; ``--pretty`` adds a human summary on
stderr. Complex numbers are emitted as [re, im] pairs. Exit codes: 0 ok,
1 usage or parse error, 2 verification failure, 3 numeric invariant breach.
The TANGLEVEC_SEED environment variable supplies the default seed for
randomized commands.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from .errors import (InvariantViolation, NotRepresentable, ParseError,
                     TangleVecError)
from .gates import (CouplingStep, LocalStep, PhaseStep, apply,
                    sequence_from_json, sequence_to_json)
from .quaternionic import QuaternionicState, is_quaternionic, reduce_to_acin, to_state
from .so6 import evolve_q, verify_commutators
from .states import (normalize, parse_partition, random_state,
                     state_from_json, state_to_json)
from .synthesis import (fubini_study_angle, maximize_three_tangle,
                        synthesize_coupling_core, w_to_ghz_sequence)
from .tangles import ckw_residual, tangle_set
from .vectors import EPS_INV, abc_vectors, gauge_phase, plucker_residual, q_vector

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3


def _c(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _cvec(v) -> list:
    return [_c(z) for z in v]


def _default_seed() -> int:
    return int(os.environ.get("TANGLEVEC_SEED", "0"))


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _load_state(path: str):
    with open(path) as fh:
        text = fh.read()
    return state_from_json(text), _digest(text)


def _report(command: str, digest, payload: dict, seed=None, tolerances=None) -> dict:
    rep = {"command": command, "input_digest": digest, "result": payload}
    if seed is not None:
        rep["seed"] = seed
    if tolerances:
        rep["tolerances"] = tolerances
    return rep


def _emit(report: dict, pretty: bool):
    print(json.dumps(report, indent=2))
    if pretty:
        def walk(obj, indent=0):
            pad = "  " * indent
            if isinstance(obj, dict):
                for k, v in obj.items():
                    if isinstance(v, (dict, list)) and len(str(v)) > 60:
                        print(f"{pad}{k}:", file=sys.stderr)
                        walk(v, indent + 1)
                    else:
                        print(f"{pad}{k}: {v}", file=sys.stderr)
            else:
                print(f"{pad}{obj}", file=sys.stderr)
        walk(report["result"])


def _sequence_payload(seq) -> list:
    return json.loads(sequence_to_json(seq))


def cmd_analyze(args) -> int:
    s, digest = _load_state(args.state)
    s = normalize(s)
    v = abc_vectors(s)
    info = gauge_phase(s)
    ts = tangle_set(s)
    payload = {
        "vectors": {"a": _cvec(v.a), "b": _cvec(v.b), "c": _cvec(v.c)},
        "gauge": {"phi_a": info.phi_a, "defined": info.defined},
        "tangles": ts.as_dict(),
        "plucker_residual": plucker_residual(s),
        "ckw_residual": ckw_residual(s),
    }
    _emit(_report("analyze", digest, payload,
                  tolerances={"eps_inv": EPS_INV}), args.pretty)
    return EXIT_OK


def cmd_evolve(args) -> int:
    s, digest = _load_state(args.state)
    s = normalize(s)
    with open(args.sequence) as fh:
        seq_text = fh.read()
    seq = sequence_from_json(seq_text)
    out = apply(seq, s)
    payload = {"state": json.loads(state_to_json(out))}
    partition = parse_partition(args.partition)
    try:
        q1 = evolve_q(seq, q_vector(s, partition))
        q2 = q_vector(out, partition)
        payload["q_vector"] = _cvec(q1.q)
        payload["partition"] = partition
        payload["dual_residual"] = float(np.abs(q1.q - q2.q).max())
    except NotRepresentable as exc:
        print(f"warning: {exc}; state picture emitted without a 6-vector",
              file=sys.stderr)
        payload["q_vector"] = None
        payload["dual_residual"] = None
    _emit(_report("evolve", [digest, _digest(seq_text)], payload), args.pretty)
    return EXIT_OK


def cmd_synthesize_coupling_core(args) -> int:
    alpha = [float(x) for x in args.alpha.split(",")]
    if len(alpha) != 3:
        raise ParseError("--alpha needs three comma-separated numbers")
    if args.degrees:
        alpha = [np.radians(a) for a in alpha]
    res = synthesize_coupling_core(alpha)
    payload = {"sequence": _sequence_payload(res.sequence),
               "achieved_distance": res.achieved, **res.meta}
    _emit(_report("synthesize coupling-core", None, payload), args.pretty)
    return EXIT_OK


def cmd_synthesize_w_to_ghz(args) -> int:
    theta, phi = args.theta, args.phi
    if args.degrees:
        theta, phi = np.radians(theta), np.radians(phi)
    res = w_to_ghz_sequence(theta, phi)
    payload = {"sequence": _sequence_payload(res.sequence),
               "achieved_fidelity": res.achieved, **res.meta}
    _emit(_report("synthesize w-to-ghz", None, payload), args.pretty)
    return EXIT_OK


def cmd_maximize_tangle(args) -> int:
    s, digest = _load_state(args.state)
    res = maximize_three_tangle(normalize(s), args.pair, args.variant)
    payload = {"sequence": _sequence_payload(res.sequence),
               "achieved": res.achieved, **res.meta}
    _emit(_report("maximize-tangle", digest, payload), args.pretty)
    return EXIT_OK


def cmd_fs_angle(args) -> int:
    s1, d1 = _load_state(args.state1)
    s2, d2 = _load_state(args.state2)
    angle = fubini_study_angle(normalize(s1), normalize(s2),
                               restarts=args.restarts, seed=args.seed)
    payload = {"angle_degrees": angle, "restarts": args.restarts,
               "note": "stochastic optimizer: upper bound on the true minimum"}
    _emit(_report("fs-angle", [d1, d2], payload, seed=args.seed), args.pretty)
    return EXIT_OK


def cmd_quat_reduce(args) -> int:
    x = np.array([float(v) for v in args.x.split(",")])
    y = np.array([float(v) for v in args.y.split(",")])
    qs = QuaternionicState(x, y)
    seq, params = reduce_to_acin(qs)
    final = apply(seq, to_state(qs))
    payload = {
        "sequence": _sequence_payload(seq),
        "xi": params.xi,
        "lambdas": [float(v) for v in params.lambdas],
        "final_state": json.loads(state_to_json(final)),
    }
    _emit(_report("quat reduce", None, payload), args.pretty)
    return EXIT_OK


def cmd_quat_check(args) -> int:
    s, digest = _load_state(args.state)
    qs = is_quaternionic(normalize(s))
    payload = {"quaternionic": qs is not None}
    if qs is not None:
        payload["x"] = [float(v) for v in qs.x]
        payload["y"] = [float(v) for v in qs.y]
    _emit(_report("quat check", digest, payload), args.pretty)
    return EXIT_OK


def cmd_verify_map(args) -> int:
    rep = verify_commutators()
    payload = {"pairs": rep.pairs, "max_discrepancy": rep.max_discrepancy,
               "ok": rep.ok}
    _emit(_report("verify-map", None, payload), args.pretty)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _verify_default(n: int, seed: int) -> dict:
    rep = verify_commutators()
    worst_plucker = worst_ckw = worst_dual = 0.0
    rng = np.random.default_rng(seed)
    from .states import PARTITION_PAIR, PARTITION_SPECTATOR
    for k in range(n):
        s = random_state(seed + k)
        worst_plucker = max(worst_plucker, plucker_residual(s))
        worst_ckw = max(worst_ckw, ckw_residual(s))
    for k in range(max(1, n // 10)):
        p = int(rng.integers(1, 4))
        first, second = PARTITION_PAIR[p]
        pairstr = first + second
        s = random_state(seed + 7919 * (k + 1))
        seq = []
        for _ in range(5):
            kind = rng.integers(0, 3)
            if kind == 0:
                q = (first, second, PARTITION_SPECTATOR[p])[rng.integers(0, 3)]
                seq.append(LocalStep(q, tuple(rng.uniform(-3, 3, 3))))
            elif kind == 1:
                seq.append(CouplingStep(pairstr, rng.uniform(-2, 2, (3, 3))))
            else:
                seq.append(PhaseStep(float(rng.uniform(-np.pi, np.pi))))
        qv = evolve_q(seq, q_vector(s, p))
        ref = q_vector(apply(seq, s), p)
        worst_dual = max(worst_dual, float(np.abs(qv.q - ref.q).max()))
    return {
        "commutator_pairs": rep.pairs,
        "commutator_discrepancy": rep.max_discrepancy,
        "states": n,
        "plucker_worst": worst_plucker,
        "ckw_worst": worst_ckw,
        "dual_evolution_worst": worst_dual,
        "pass": bool(rep.ok and worst_plucker < 1e-12 and worst_ckw < 1e-11
                     and worst_dual < 1e-10),
    }


def _verify_quaternionic(n: int, seed: int) -> dict:
    from .quaternionic import abc_quaternionic, tangles_quaternionic
    rng = np.random.default_rng(seed)
    worst_abc = worst_tan = 0.0
    for _ in range(n):
        v = rng.standard_normal(8)
        v /= np.linalg.norm(v) * np.sqrt(2)
        qs = QuaternionicState(v[:4], v[4:])
        s = to_state(qs)
        va, vg = abc_quaternionic(qs), abc_vectors(s)
        worst_abc = max(worst_abc,
                        float(np.abs(va.a - vg.a).max()),
                        float(np.abs(va.b - vg.b).max()),
                        float(np.abs(va.c - vg.c).max()))
        tq, tg = tangles_quaternionic(qs), tangle_set(s)
        worst_tan = max(worst_tan, max(
            abs(getattr(tq, f) - getattr(tg, f))
            for f in tq.__dataclass_fields__))
    return {
        "states": n,
        "abc_worst": worst_abc,
        "tangles_worst": worst_tan,
        "pass": bool(worst_abc < 1e-11 and worst_tan < 1e-11),
    }


def cmd_verify(args) -> int:
    if args.suite == "quaternionic":
        payload = _verify_quaternionic(args.num, args.seed)
    else:
        payload = _verify_default(args.num, args.seed)
    _emit(_report(f"verify --suite {args.suite}", None, payload,
                  seed=args.seed), args.pretty)
    return EXIT_OK if payload["pass"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tanglevec",
        description="three-qubit entanglement vectors: analysis, evolution, synthesis")
    ap.add_argument("--pretty", action="store_true",
                    help="also print a human-readable summary to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariant vectors, gauge, tangles")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("evolve", help="apply a gate sequence in both pictures")
    p.add_argument("--state", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--partition", default=3)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("synthesize", help="analytic constructions")
    ssub = p.add_subparsers(dest="what", required=True)
    pc = ssub.add_parser("coupling-core")
    pc.add_argument("--alpha", required=True, help="a1,a2,a3")
    pc.add_argument("--degrees", action="store_true")
    pc.set_defaults(func=cmd_synthesize_coupling_core)
    pw = ssub.add_parser("w-to-ghz")
    pw.add_argument("--theta", type=float, required=True)
    pw.add_argument("--phi", type=float, required=True)
    pw.add_argument("--degrees", action="store_true")
    pw.set_defaults(func=cmd_synthesize_w_to_ghz)

    p = sub.add_parser("maximize-tangle", help="drive the three-tangle to its bound")
    p.add_argument("--state", required=True)
    p.add_argument("--pair", default="ab", choices=["ab", "bc", "ac"])
    p.add_argument("--variant", default="economical",
                   choices=["economical", "single"])
    p.set_defaults(func=cmd_maximize_tangle)

    p = sub.add_parser("fs-angle", help="closest locally-equivalent angle (deg)")
    p.add_argument("--state1", required=True)
    p.add_argument("--state2", required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--restarts", type=int, default=32)
    p.set_defaults(func=cmd_fs_angle)

    p = sub.add_parser("quat", help="quaternionic subsystem")
    qsub = p.add_subparsers(dest="what", required=True)
    qr = qsub.add_parser("reduce")
    qr.add_argument("--x", required=True, help="x0,x1,x2,x3")
    qr.add_argument("--y", required=True, help="y0,y1,y2,y3")
    qr.set_defaults(func=cmd_quat_reduce)
    qc = qsub.add_parser("check")
    qc.add_argument("--state", required=True)
    qc.set_defaults(func=cmd_quat_check)

    p = sub.add_parser("verify-map", help="exact commutator table of the generator map")
    p.set_defaults(func=cmd_verify_map)

    p = sub.add_parser("verify", help="invariant sweeps over random states")
    p.add_argument("--suite", default="default", choices=["default", "quaternionic"])
    p.add_argument("-N", "--num", type=int, default=1000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TangleVecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
