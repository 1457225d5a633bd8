"""Command-line front end.

    gf2max count  --n 4
    gf2max polys  --n 5
    gf2max gen    --poly x^3+x+1 [--mode sampled --count 10 --seed 1]
    gf2max verify --n 3
    gf2max encode 001/101/010
    gf2max decode 172
    gf2max stream --matrix 172 --seed 100 --steps 7
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import group, reference
from .errors import CapExceededError
from .gf2mat import (
    Gf2Mat,
    companion,
    decode,
    encode,
    format_code,
    format_grid,
    format_vector,
    parse_matrix,
    parse_vector,
)
from .gf2poly import (
    ENUMERATION_CAP,
    FACTORING_CAP,
    Gf2Poly,
    count_primitive,
    enumerate_primitive,
    factor_mersenne,
    format_poly,
    is_primitive,
    parse_poly,
    totient,
)
from .streamgen import StateStream, format_states


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    polynomial: Gf2Poly | None = None
    mode: str = "exhaustive"
    count: int = 10
    seed: int | None = None
    format: str = "text"
    caps: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        poly = parse_poly(args.poly) if getattr(args, "poly", None) else None
        n = getattr(args, "n", None)
        if poly is not None:
            if n is not None and n != poly.degree:
                raise ValueError(f"--n {n} does not match degree {poly.degree} of {poly}")
            n = poly.degree
        cfg = cls(
            subcommand=args.command,
            n=n,
            polynomial=poly,
            mode=getattr(args, "mode", "exhaustive"),
            count=getattr(args, "count", 10),
            seed=getattr(args, "seed_int", None),
            format=args.format,
            caps={
                "enum": args.cap_enum,
                "factor": args.cap_factor,
                "brute": args.cap_brute,
                "exhaustive": args.cap_exhaustive,
            },
        )
        cfg.check_caps()
        return cfg

    def check_caps(self) -> None:
        n = self.n
        if n is None:
            return
        if self.subcommand in ("count",) and n > self.caps["factor"]:
            raise CapExceededError(f"factoring cap exceeded: n={n} > {self.caps['factor']}")
        if self.subcommand == "polys" and n > self.caps["enum"]:
            raise CapExceededError(f"enumeration cap exceeded: n={n} > {self.caps['enum']}")
        if self.subcommand == "gen" and self.mode == "exhaustive" and n > self.caps["exhaustive"]:
            raise CapExceededError(
                f"exhaustive cap exceeded: n={n} > {self.caps['exhaustive']}; use --mode sampled"
            )
        if self.subcommand == "verify" and n > self.caps["brute"]:
            raise CapExceededError(
                f"cap exceeded: brute-force verification is limited to n <= {self.caps['brute']}; "
                "use 'gen --mode sampled' for spot checks at larger n"
            )


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonnegative_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _emit(cfg: RunConfig, text_lines: list[str], payload: dict) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _product_expansion(n: int, start: int) -> str:
    q = 1 << n
    return "".join(f"({q}-{1 << i})" for i in range(start, n)) or "1"


def cmd_count(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    n = cfg.n
    fact = factor_mersenne(n, cfg.caps["factor"])
    phi = totient(fact.value, dict(fact.factors))
    gl = group.gl_order(n)
    npoly = count_primitive(n, cfg.caps["factor"])
    per = group.class_size(n)
    total = group.total_max_order_count(n, cfg.caps["factor"])
    lines = [
        f"n = {n}",
        f"|GL_n(GF(2))| = prod_(i=0..n-1) (2^n-2^i) = {_product_expansion(n, 0)} = {gl}",
        f"primitive polynomials = phi(2^n-1)/n = phi({fact.value})/{n} = {phi}/{n} = {npoly}",
        f"matrices per polynomial = prod_(i=1..n-1) (2^n-2^i) = {_product_expansion(n, 1)} = {per}",
        f"total matrices of order {fact.value} = {per} * {npoly} = {total}",
    ]
    _emit(cfg, lines, {
        "n": n,
        "gl_order": gl,
        "count_primitive": npoly,
        "class_size": per,
        "total": total,
        "timings": {"total_s": time.perf_counter() - t0},
    })
    return 0


def cmd_polys(cfg: RunConfig) -> int:
    polys = enumerate_primitive(cfg.n, cfg.caps["enum"])
    lines = [f"{format_poly(f)} ({f.coeffs})" for f in polys]
    _emit(cfg, lines, {
        "n": cfg.n,
        "count": len(polys),
        "polynomials": [{"poly": format_poly(f), "int": f.coeffs} for f in polys],
    })
    return 0


def cmd_gen(cfg: RunConfig) -> int:
    f = cfg.polynomial
    if f is None:
        raise ValueError("gen requires --poly")
    t0 = time.perf_counter()
    if cfg.mode == "exhaustive":
        report = group.conjugacy_class(f, cfg.caps["exhaustive"])
    else:
        report = group.sample_conjugates(f, cfg.count, cfg.seed)
    elapsed = time.perf_counter() - t0
    payload = report.to_dict()
    payload["timings"] = {"generate_s": elapsed}
    if cfg.mode == "sampled":
        payload["duplicates"] = report.duplicates
    _emit(cfg, [format_code(c, report.n) for c in report.codes], payload)
    return 0


def _verify_checks(n: int, caps: dict[str, int], workers: int | None) -> tuple[list[tuple[bool, str]], list[str]]:
    """Run every brute-force cross-check at dimension n; returns (checks, notes)."""
    checks: list[tuple[bool, str]] = []
    notes: list[str] = []

    def check(ok: bool, what: str) -> None:
        checks.append((bool(ok), what))

    census = group.census_matrices(n, caps["brute"], workers)
    found = sum(len(v) for v in census.values())
    formula = group.total_max_order_count(n, caps["factor"])
    check(found == formula, f"census count {found} = formula {formula}")

    polys = enumerate_primitive(n, caps["enum"])
    check(set(census) == set(polys), f"census keys are exactly the {len(polys)} primitive polynomials")
    check(all(is_primitive(f) for f in census), "every census key is primitive")
    size = group.class_size(n)
    check(all(len(v) == size for v in census.values()), f"every bucket has {size} matrices")

    gl = sum(1 for _ in group.enumerate_gl(n, caps["exhaustive"]))
    check(gl == group.gl_order(n), f"enumerated GL_{n} has {gl} = {group.gl_order(n)} elements")
    check(size * ((1 << n) - 1) == group.gl_order(n), "class size * (2^n-1) = |GL_n|")

    for f in polys:
        a = companion(f)
        h = group.centralizer_of_cyclic(a)
        check(len(h) == (1 << n) - 1, f"|N(companion({f}))| = {len(h)}")
        check(group.verify_centralizer(a, caps["exhaustive"]), f"centralizer of companion({f}) matches commutation scan")
        cls_codes = group.conjugacy_class(f, caps["exhaustive"]).codes
        check(cls_codes == census.get(f), f"coset-walk class of {f} matches order census")
        check(cls_codes == group.class_by_scan(f, caps["brute"], workers), f"coset-walk class of {f} matches char-poly scan")

    if n == 3:
        for base in (reference.COMPANION_X3_X_1, reference.COMPANION_X3_X2_1):
            got = set(group.centralizer_of_cyclic(decode(base, 3)).codes)
            if got == reference.CENTRALIZER_396:
                notes.append(f"published centralizer list matches N({base})")
            else:
                notes.append(
                    f"published centralizer list differs from N({base}) = {sorted(got)}"
                )
        for coeffs, published in reference.CLASSES.items():
            f = Gf2Poly(coeffs)
            got = set(census.get(f, []))
            if got == published:
                notes.append(f"published class list for {f} matches oracle")
            else:
                notes.append(
                    f"published class list for {f} differs from oracle: "
                    f"missing {sorted(got - published)}, extra {sorted(published - got)}"
                )
        check(set(group.centralizer_of_cyclic(decode(396, 3)).codes) == reference.CENTRALIZER_396,
              "N(396) equals the published centralizer")
    return checks, notes


def cmd_verify(cfg: RunConfig, workers: int | None = None) -> int:
    t0 = time.perf_counter()
    checks, notes = _verify_checks(cfg.n, cfg.caps, workers)
    ok = all(c for c, _ in checks)
    lines = [f"{'PASS' if c else 'FAIL'} {what}" for c, what in checks]
    lines += [f"NOTE {note}" for note in notes]
    lines.append(f"{'PASS' if ok else 'FAIL'} n={cfg.n}")
    _emit(cfg, lines, {
        "n": cfg.n,
        "passed": ok,
        "checks": [{"passed": c, "check": what} for c, what in checks],
        "notes": notes,
        "timings": {"total_s": time.perf_counter() - t0},
    })
    return 0 if ok else 1


def cmd_encode(cfg: RunConfig, m: Gf2Mat) -> int:
    c = encode(m)
    _emit(cfg, [str(c)], {"n": c.n, "code": c.code})
    return 0


def cmd_decode(cfg: RunConfig, m: Gf2Mat) -> int:
    _emit(cfg, [format_grid(m)], {"n": m.n, "code": m.code, "rows": format_grid(m).split("\n")})
    return 0


def cmd_stream(cfg: RunConfig, m: Gf2Mat, state: int, steps: int, state_format: str) -> int:
    stream = StateStream(m, state)
    states = stream.take(steps)
    _emit(cfg, format_states(states, m.n, state_format), {
        "n": m.n,
        "matrix": m.code,
        "seed": format_vector(state, m.n),
        "steps": steps,
        "states": format_states(states, m.n, "bits"),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap-enum", type=_positive_int, default=ENUMERATION_CAP,
                        help="max degree for primitive-polynomial enumeration")
    common.add_argument("--cap-factor", type=_positive_int, default=FACTORING_CAP,
                        help="max n for factoring 2^n-1")
    common.add_argument("--cap-brute", type=_positive_int, default=group.BRUTE_FORCE_CAP,
                        help="max n for full code-space scans")
    common.add_argument("--cap-exhaustive", type=_positive_int, default=group.EXHAUSTIVE_CAP,
                        help="max n for GL_n enumeration")

    parser = argparse.ArgumentParser(prog="gf2max", description="Maximal-order matrices over GF(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="counting formula for order 2^n-1 matrices")
    p.add_argument("--n", type=_positive_int, required=True)

    p = sub.add_parser("polys", parents=[common], help="list primitive polynomials of degree n")
    p.add_argument("--n", type=_positive_int, required=True)

    p = sub.add_parser("gen", parents=[common], help="generate maximal-order matrices")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--poly", required=True, help="primitive polynomial, e.g. x^3+x+1 or 11")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--count", type=_nonnegative_int, default=10)
    p.add_argument("--seed", dest="seed_int", type=int, default=0)

    p = sub.add_parser("verify", parents=[common], help="brute-force cross-checks at dimension n")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, help="processes for code-space scans")

    p = sub.add_parser("encode", parents=[common], help="matrix grid to integer code")
    p.add_argument("matrix", help="rows of 0/1 separated by newlines, '/' or ';'")
    p.add_argument("--n", type=_positive_int)

    p = sub.add_parser("decode", parents=[common], help="integer code to matrix grid")
    p.add_argument("code", help="decimal or 0x-hex code")
    p.add_argument("--n", type=_positive_int, help="dimension (default: smallest that fits)")

    p = sub.add_parser("stream", parents=[common], help="emit the state sequence s -> A*s")
    p.add_argument("--matrix", required=True, help="matrix code or grid")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--seed", dest="state", required=True, help="nonzero n-character 0/1 state")
    p.add_argument("--steps", type=_nonnegative_int, default=16)
    p.add_argument("--state-format", choices=("bits", "hex"), default="bits")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns 0 on success, 1 on a reported error or failed check, 2 on bad input."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.error(str(exc))
    try:
        if cfg.subcommand == "encode":
            inputs = (parse_matrix(args.matrix, cfg.n),)
        elif cfg.subcommand == "decode":
            inputs = (parse_matrix(args.code, cfg.n),)
        elif cfg.subcommand == "stream":
            m = parse_matrix(args.matrix, cfg.n)
            inputs = (m, parse_vector(args.state, m.n), args.steps, args.state_format)
        else:
            inputs = ()
    except ValueError as exc:
        parser.error(str(exc))
    commands = {
        "count": cmd_count,
        "polys": cmd_polys,
        "gen": cmd_gen,
        "verify": lambda cfg: cmd_verify(cfg, args.workers),
        "encode": cmd_encode,
        "decode": cmd_decode,
        "stream": cmd_stream,
    }
    try:
        return commands[cfg.subcommand](cfg, *inputs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
