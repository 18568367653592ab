"""Command-line entry point.

Exit codes: 0 success, 1 usage/format/I-O error, 2 validation failure,
3 decryption failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import codec
from .estimator import OMEGA_DEFAULT, validate
from .rng import SEED_BYTES, SeededRng
from .scheme import PRESETS, DecryptFailure, InvalidParameters, ParameterSet, decrypt, encrypt, keygen, sample_plaintext

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_DECRYPT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> bytes:
    try:
        seed = bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be hexadecimal") from None
    if len(seed) != SEED_BYTES:
        raise argparse.ArgumentTypeError(f"seed must be {SEED_BYTES} bytes ({2 * SEED_BYTES} hex digits)")
    return seed


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), help="named parameter set")
    for name in ("n", "k", "w", "l"):
        p.add_argument(f"--{name}", type=int)


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, metavar="HEX32", help="32-byte seed in hex; default from os.urandom")


def resolve_params(args) -> ParameterSet:
    explicit = [getattr(args, x) for x in ("n", "k", "w", "l")]
    if args.preset:
        if any(v is not None for v in explicit):
            raise UsageError("use either --preset or --n/--k/--w/--l, not both")
        return PRESETS[args.preset]
    if any(v is None for v in explicit):
        raise UsageError("give --preset or all of --n --k --w --l")
    return ParameterSet(*explicit)


def _rng(args) -> SeededRng:
    return SeededRng(args.seed)


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _emit_kv(pairs) -> None:
    for k, v in pairs:
        print(f"{k}={v}")


def _lambda(args, params: ParameterSet) -> int:
    if args.lam is not None:
        return args.lam
    return params.target_bits if params.name else 128


def cmd_params(args) -> int:
    params = resolve_params(args)
    lam = _lambda(args, params)
    report = validate(params, lam, args.omega)
    _emit_kv([("name", params.name or "custom")] + [kv for kv in report.key_values()
              if kv[0] in ("n", "k", "w", "l", "t", "lambda", "failure_exponent", "size_pk_bytes",
                           "size_sk_bytes", "size_ct_bytes", "classical_bits", "quantum_bits",
                           "quantum_bits_claimed", "valid")])
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_estimate(args) -> int:
    params = resolve_params(args)
    report = validate(params, _lambda(args, params), args.omega)
    print(report.format_table())
    print()
    print(report.format_kv())
    if args.plot_dir:
        from .plots import plot_security

        print(f"figure={plot_security(report, args.plot_dir)}")
    for c in report.failed():
        print(f"constraint {c.name} fails: value {c.value:.1f} vs bound {c.bound:.1f}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_keygen(args) -> int:
    params = resolve_params(args)
    pk, sk = keygen(params, _rng(args))
    _write(args.pk, codec.serialize_pk(pk))
    _write(args.sk, codec.serialize_sk(sk))
    print(f"pk={args.pk} bytes={os.path.getsize(args.pk)}")
    print(f"sk={args.sk} bytes={os.path.getsize(args.sk)}")
    return EXIT_OK


def cmd_sample_plaintext(args) -> int:
    params = resolve_params(args)
    pt = sample_plaintext(params, _rng(args))
    _write(args.out, codec.serialize_pt(pt, params))
    print(f"pt={args.out} t={params.t}")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = codec.deserialize_pk(_read(args.pk))
    pt, _ = codec.deserialize_pt(_read(args.inp), expect=pk.params)
    ct = encrypt(pk, pt, _rng(args))
    _write(args.out, codec.serialize_ct(ct))
    print(f"ct={args.out} bytes={os.path.getsize(args.out)}")
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = codec.deserialize_sk(_read(args.sk))
    ct = codec.deserialize_ct(_read(args.inp), expect=sk.params)
    try:
        pt = decrypt(sk, ct)
    except DecryptFailure as exc:
        print(f"decryption failed: {exc}", file=sys.stderr)
        return EXIT_DECRYPT
    _write(args.out, codec.serialize_pt(pt, sk.params))
    print(f"pt={args.out}")
    return EXIT_OK


def cmd_failure_sim(args) -> int:
    from .simulate import failure_sim

    params = resolve_params(args)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    seed = args.seed or os.urandom(SEED_BYTES)

    def progress(chunk):
        if args.verbose:
            print(f"chunk {chunk.index}: {chunk.failures}/{chunk.trials}", file=sys.stderr)

    res = failure_sim(params, args.trials, seed, workers=args.workers, chunk=args.chunk,
                      confidence=args.confidence, progress=progress)
    print(f"seed={seed.hex()}")
    print(res.format_kv())
    if args.plot_dir:
        from .plots import plot_failure_sim

        print(f"figure={plot_failure_sim(res, args.plot_dir)}")
    ok = res.all_failures_explained and res.consistent_with_bound
    if args.strict:
        ok = ok and res.upper_within_bound
    return EXIT_OK if ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rankpke", description="Rank-metric one-way encryption: keys, estimates, experiments.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    for name, fn, hlp in (("params", cmd_params, "derived parameters and verdict"),
                          ("estimate", cmd_estimate, "full security report")):
        p = sub.add_parser(name, help=hlp)
        _add_params(p)
        p.add_argument("--lambda", dest="lam", type=int, help="target security (default: preset level or 128)")
        p.add_argument("--omega", type=float, default=OMEGA_DEFAULT, help="linear algebra exponent")
        if name == "estimate":
            p.add_argument("--plot-dir", help="write a cost chart into this directory")
        p.set_defaults(func=fn)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_params(p)
    _add_seed(p)
    p.add_argument("--pk", required=True)
    p.add_argument("--sk", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sample-plaintext", help="write a uniform plaintext")
    _add_params(p)
    _add_seed(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample_plaintext)

    p = sub.add_parser("encrypt", help="encrypt a plaintext file")
    _add_seed(p)
    p.add_argument("--pk", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--sk", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("failure-sim", help="Monte Carlo decryption failure rate")
    _add_params(p)
    _add_seed(p)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--chunk", type=int, default=10_000, help="trials per independently seeded shard")
    p.add_argument("--confidence", type=float, default=0.99)
    p.add_argument("--strict", action="store_true",
                   help="also require the upper confidence bound to sit below the failure bound")
    p.add_argument("--plot-dir", help="write the running-rate figure into this directory")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_failure_sim)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except codec.FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidParameters as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
