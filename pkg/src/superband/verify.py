"""Brute-force verification suite behind ``superband verify``.

Each claim is a small function that returns a ``CheckResult``. Claims run in
registry order and draw randomness only from a ``random.Random`` seeded by
the config, so a given config always yields the same report.
"""

from __future__ import annotations

import configparser
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from . import bands as B
from . import green as G
from . import semigroup as S
from .errors import (
    DegenerateError,
    DomainError,
    ParityError,
    ParseError,
    SuperbandError,
)
from .expr import max_generator, parse_element
from .grassmann import (
    GrassmannElement,
    Parity,
    alpha_equal,
    annihilator_even,
    even_masks,
    monomials,
    multiplication_rank,
    odd_masks,
)
from .supermatrix import (
    Supermatrix,
    berezinian,
    berezinian_11,
    berezinian_block,
    is_odd_closed,
    odd_power_closed_form,
    reduce_even,
    reduce_odd,
    supertrace,
)

TIERS = ("quick", "full")
FORMATS = ("text", "json", "csv", "dot")


# -- configuration ---------------------------------------------------------------------


@dataclass
class RunConfig:
    n_generators: int = 4
    alpha: str = "g1"
    coefficient_pool: tuple = (-1, 0, 1, 2)
    grid_p: int = 4  # parameter classes for P/Q/null families
    grid_rect: int = 3  # classes per index for (1|1) grids
    grid_band: int = 2  # classes per index for (n|n) grids, n >= 2
    seed: int = 0
    format: str = "text"
    tier: str = "quick"

    _INT_KEYS = ("n_generators", "grid_p", "grid_rect", "grid_band", "seed")

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n_generators < 1:
            raise ParseError("n_generators must be >= 1")
        if self.seed < 0:
            raise ParseError("seed must be an unsigned integer")
        for key in ("grid_p", "grid_rect", "grid_band"):
            if getattr(self, key) < 1:
                raise ParseError(f"{key} must be >= 1")
        if self.tier not in TIERS:
            raise ParseError(f"tier must be one of {TIERS}")
        if self.format not in FORMATS:
            raise ParseError(f"format must be one of {FORMATS}")
        if not self.coefficient_pool:
            raise ParseError("coefficient_pool is empty")
        self.alpha_element()

    def alpha_element(self) -> GrassmannElement:
        if max_generator(self.alpha) > self.n_generators:
            raise ParseError(f"alpha {self.alpha!r} uses generators beyond N={self.n_generators}")
        a = parse_element(self.alpha, self.n_generators)
        if a.is_zero():
            raise DegenerateError("alpha must be nonzero")
        if a.parity is not Parity.ODD:
            raise ParityError(f"alpha must be odd, got {a}")
        return a

    @classmethod
    def from_mapping(cls, data: dict, **overrides) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__ if not f.startswith("_")}
        values = {}
        for key, raw in data.items():
            if key not in known:
                raise ParseError(f"unknown config key {key!r}")
            values[key] = _convert(key, raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def from_file(cls, path: str, **overrides) -> "RunConfig":
        """Read ``key = value`` lines (``#`` comments, optional ``[section]`` headers ignored)."""
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
        try:
            parser.read_string("[superband]\n" + text)
        except configparser.Error as exc:
            raise ParseError(f"{path}: {exc}") from exc
        data = {}
        for section in parser.sections():
            for key, value in parser.items(section):
                data[key] = value.strip().strip('"').strip("'")
        return cls.from_mapping(data, **overrides)

    def describe(self) -> dict:
        return {
            "tier": self.tier,
            "n_generators": self.n_generators,
            "alpha": self.alpha_element().to_text(),
            "coefficient_pool": [str(c) for c in self.coefficient_pool],
            "grid_p": self.grid_p,
            "grid_rect": self.grid_rect,
            "grid_band": self.grid_band,
            "seed": self.seed,
        }


def _convert(key: str, raw):
    if not isinstance(raw, str):
        return tuple(raw) if key == "coefficient_pool" else raw
    raw = raw.strip()
    try:
        if key in RunConfig._INT_KEYS:
            return int(raw)
        if key == "coefficient_pool":
            items = raw.strip("[]{}()").split(",")
            return tuple(_scalar(x) for x in items if x.strip())
    except ValueError as exc:
        raise ParseError(f"bad value for {key}: {raw!r}") from exc
    return raw


def _scalar(text: str):
    c = Fraction(text.strip())
    return c.numerator if c.denominator == 1 else c


# -- results -----------------------------------------------------------------------------


PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class CheckResult:
    claim: str
    status: str
    detail: str
    counterexample: str | None = None


@dataclass
class Report:
    config: dict
    results: list[CheckResult]
    warnings: list[str] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict[str, int]:
        return {s: sum(1 for r in self.results if r.status == s) for s in (PASS, FAIL, SKIP)}

    def to_text(self) -> str:
        cfg = self.config
        lines = [
            "superband verify: tier={tier} N={n_generators} alpha={alpha} seed={seed} "
            "pool={pool}".format(pool=",".join(cfg["coefficient_pool"]), **cfg)
        ]
        width = max(len(r.claim) for r in self.results)
        for r in self.results:
            lines.append(f"{r.status}  {r.claim:<{width}}  {r.detail}")
            if r.counterexample:
                lines.append(f"      counterexample: {r.counterexample}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        c = self.counts()
        lines.append(
            f"summary: {len(self.results)} claims, {c[PASS]} passed, {c[FAIL]} failed, {c[SKIP]} skipped"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "results": [asdict(r) for r in self.results],
            "warnings": self.warnings,
            "summary": self.counts(),
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# -- run context -------------------------------------------------------------------------


class Context:
    def __init__(self, config: RunConfig):
        self.config = config
        self.full = config.tier == "full"
        self.rng = random.Random(config.seed)
        self.alpha = config.alpha_element()
        self.n = config.n_generators
        cap = 6 if self.full else 3
        self.n_sweep = min(self.n, cap)
        self.pool = tuple(config.coefficient_pool)
        self.warnings: list[str] = []
        self._cache: dict = {}

    def warn(self, text: str) -> None:
        if text not in self.warnings:
            self.warnings.append(text)

    def cached(self, key, build: Callable):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # random homogeneous elements with coefficients from the pool
    def rand_element(self, n: int, masks: list[int], density: float = 0.5) -> GrassmannElement:
        terms = {m: self.rng.choice(self.pool) for m in masks if self.rng.random() < density}
        return GrassmannElement(n, terms)

    def rand_even(self, n: int, invertible: bool = False) -> GrassmannElement:
        x = self.rand_element(n, even_masks(n))
        if invertible and x.body == 0:
            nonzero = [c for c in self.pool if c] or [1]
            x = x + self.rng.choice(nonzero)
        return x

    def rand_odd(self, n: int) -> GrassmannElement:
        return self.rand_element(n, odd_masks(n))

    def rand_matrix(self, n: int, p: int = 1, q: int = 1, invertible: bool = False) -> Supermatrix:
        size = p + q
        grid = [[None] * size for _ in range(size)]
        for i in range(size):
            for j in range(size):
                even = (i < p) == (j < p)
                grid[i][j] = self.rand_even(n) if even else self.rand_odd(n)
        if invertible:
            for i in range(size):
                body = self.rng.choice([c for c in self.pool if c] or [1])
                grid[i][i] = grid[i][i] - grid[i][i].body + body
        return Supermatrix(p, q, grid, n=n)

    # parameter classes and grids, all for the configured alpha
    def classes(self, count: int, exclude_unit: bool = True) -> list[GrassmannElement]:
        key = ("classes", count, exclude_unit)
        got = self.cached(key, lambda: B.parameter_classes(self.alpha, count, self.pool, exclude_unit))
        if len(got) < count:
            self.warn(f"only {len(got)} parameter classes available (asked for {count})")
        return got

    def ann(self):
        return annihilator_even(self.alpha)

    def raw_params(self, count: int) -> list[GrassmannElement]:
        """Canonical classes followed by alpha-equal shifts of them (when Ann alpha is nonzero)."""
        cls = self.classes(count)
        ann = self.ann()
        out = list(cls)
        if ann.dim:
            for i, t in enumerate(cls):
                shifted = t + ann.basis[i % ann.dim]
                if not B.is_unit_class(self.alpha, shifted):
                    out.append(shifted)
        return out

    def band(self, n: int, classes: int | None = None) -> tuple[list, B.CayleyTable]:
        classes = classes or self.config.grid_band
        return self.cached(("band", n, classes), lambda: _with_table(B.band_grid(self.alpha, n, classes, self.pool)))

    def rect(self) -> tuple[list, B.CayleyTable]:
        def build():
            cls = self.classes(self.config.grid_rect)
            return _with_table(B.rect_family(self.alpha, cls, cls))

        return self.cached("rect", build)


def _with_table(elems):
    return elems, B.cayley_table(elems)


# -- registry ------------------------------------------------------------------------------


CLAIMS: list[tuple[str, Callable[[Context], CheckResult]]] = []


def claim(name: str):
    def deco(fn):
        CLAIMS.append((name, fn))
        return fn

    return deco


def _result(name: str, ok: bool, detail: str, counterexample=None) -> CheckResult:
    return CheckResult(name, PASS if ok else FAIL, detail, None if ok else counterexample)


def _first(iterable: Iterable, pred) -> object | None:
    for x in iterable:
        if pred(x):
            return x
    return None


# -- Grassmann algebra -------------------------------------------------------------------


@claim("grassmann.associativity")
def _assoc(ctx: Context):
    name = "grassmann.associativity"
    n = min(ctx.n_sweep, 4)
    mons = monomials(n)
    bad = _first(
        product(mons, repeat=3), lambda t: (t[0] * t[1]) * t[2] != t[0] * (t[1] * t[2])
    )
    count = 1000 if ctx.full else 100
    rnd = None
    if bad is None:
        for _ in range(count):
            x, y, z = (ctx.rand_element(ctx.n_sweep, list(range(1 << ctx.n_sweep))) for _ in range(3))
            if (x * y) * z != x * (y * z):
                rnd = (x, y, z)
                break
    witness = bad or rnd
    return _result(
        name,
        witness is None,
        f"all {len(mons) ** 3} monomial triples at N={n}; {count} random triples at N={ctx.n_sweep}",
        witness and " , ".join(map(str, witness)),
    )


@claim("grassmann.supercommutativity")
def _supercomm(ctx: Context):
    n = min(ctx.n_sweep, 4)
    mons = monomials(n)

    def sign(x, y):
        return -1 if (x.parity is Parity.ODD and y.parity is Parity.ODD) else 1

    bad = _first(product(mons, repeat=2), lambda p: p[0] * p[1] != (p[1] * p[0]) * sign(*p))
    count = 500 if ctx.full else 50
    for _ in range(count if bad is None else 0):
        x = ctx.rand_even(ctx.n_sweep) if ctx.rng.random() < 0.5 else ctx.rand_odd(ctx.n_sweep)
        y = ctx.rand_even(ctx.n_sweep) if ctx.rng.random() < 0.5 else ctx.rand_odd(ctx.n_sweep)
        if x * y != (y * x) * sign(x, y):
            bad = (x, y)
            break
    return _result(
        "grassmann.supercommutativity",
        bad is None,
        f"all monomial pairs at N={n}; {count} random homogeneous pairs",
        bad and f"x={bad[0]}, y={bad[1]}",
    )


@claim("grassmann.odd_square_zero")
def _odd_sq(ctx: Context):
    count = 1000 if ctx.full else 100
    samples = [ctx.rand_odd(ctx.n_sweep) for _ in range(count)]
    samples += [GrassmannElement.generator(ctx.n_sweep, i) for i in range(1, ctx.n_sweep + 1)]
    bad = _first(samples, lambda g: not (g * g).is_zero())
    return _result("grassmann.odd_square_zero", bad is None, f"{len(samples)} odd samples", str(bad))


@claim("grassmann.body_homomorphism")
def _body(ctx: Context):
    count = 500 if ctx.full else 50
    masks = list(range(1 << ctx.n_sweep))
    bad = None
    for _ in range(count):
        x, y = ctx.rand_element(ctx.n_sweep, masks), ctx.rand_element(ctx.n_sweep, masks)
        if (x * y).body != x.body * y.body or x != x.body + x.soul:
            bad = (x, y)
            break
    return _result(
        "grassmann.body_homomorphism", bad is None, f"{count} random pairs",
        bad and f"x={bad[0]}, y={bad[1]}",
    )


@claim("grassmann.annihilator")
def _ann(ctx: Context):
    alphas = [ctx.alpha]
    for i in range(1, ctx.n_sweep + 1):
        alphas.append(GrassmannElement.generator(ctx.n_sweep, i))
    for _ in range(20 if ctx.full else 5):
        a = ctx.rand_odd(ctx.n_sweep)
        if not a.is_zero():
            alphas.append(a)
    for a in alphas:
        ann = annihilator_even(a)
        if any(not (a * v).is_zero() for v in ann.basis):
            return _result("grassmann.annihilator", False, "", f"alpha={a}: basis element not annihilated")
        expected = len(even_masks(a.n)) - multiplication_rank(a)
        if ann.dim != expected:
            return _result("grassmann.annihilator", False, "", f"alpha={a}: dim {ann.dim} != {expected}")
    return _result(
        "grassmann.annihilator", True,
        f"{len(alphas)} odd alphas: basis killed by alpha, dim = 2^(N-1) - rank",
    )


@claim("grassmann.alpha_equality_equivalence")
def _alpha_eq(ctx: Context):
    a = ctx.alpha
    params = ctx.raw_params(4)
    params += [ctx.rand_even(ctx.n) for _ in range(6 if ctx.full else 3)]
    rel = {(i, j) for i in range(len(params)) for j in range(len(params)) if alpha_equal(a, params[i], params[j])}
    size = len(params)
    reflexive = all((i, i) in rel for i in range(size))
    symmetric = all((j, i) in rel for i, j in rel)
    transitive = all((i, k) in rel for i, j in rel for j2, k in rel if j == j2)
    ok = reflexive and symmetric and transitive
    return _result(
        "grassmann.alpha_equality_equivalence", ok,
        f"{size} even parameters, {len(rel)} related pairs",
        f"reflexive={reflexive} symmetric={symmetric} transitive={transitive}",
    )


# -- supermatrices -------------------------------------------------------------------------


def _sweep_pool(ctx: Context):
    return ctx.pool if ctx.full else tuple(c for c in ctx.pool if c in (-1, 0, 1)) or ctx.pool


def _sweep_elements(ctx: Context):
    def build():
        pool = _sweep_pool(ctx)
        n = 2
        evens = [GrassmannElement(n, {0: c0, 3: c3}) for c0 in pool for c3 in pool]
        odds = [GrassmannElement(n, {1: c1, 2: c2}) for c1 in pool for c2 in pool]
        return evens, odds

    return ctx.cached("sweep", build)


def _exhaustive_11(ctx: Context):
    evens, odds = _sweep_elements(ctx)
    for a in evens:
        for al in odds:
            for be in odds:
                for b in evens:
                    yield Supermatrix.from_11(a, al, be, b, n=2)


def _random_11(ctx: Context, invertible=True):
    count = 500 if ctx.full else 100
    return ctx.cached(
        ("random11", invertible),
        lambda: [ctx.rand_matrix(ctx.n_sweep, invertible=invertible) for _ in range(count)],
    )


def _exhaustive_note(ctx: Context) -> str:
    evens, odds = _sweep_elements(ctx)
    return f"{len(evens) ** 2 * len(odds) ** 2} (1|1) matrices at N=2"


@claim("supermatrix.supertrace")
def _str(ctx: Context):
    bad = _first(_exhaustive_11(ctx), lambda M: supertrace(M) != M.a - M.b)
    bad = bad or _first(_random_11(ctx), lambda M: supertrace(M) != M.a - M.b)
    return _result(
        "supermatrix.supertrace", bad is None,
        f"str M = a - b on {_exhaustive_note(ctx)} and {len(_random_11(ctx))} random at N={ctx.n_sweep}",
        str(bad),
    )


@claim("supermatrix.berezinian_formula")
def _ber(ctx: Context):
    def wrong(M):
        if M.b.body == 0:
            return False
        # Ber * b^2 = a b + beta alpha, free of inverses
        return berezinian(M) * M.b * M.b != M.a * M.b + M.beta * M.alpha

    bad = _first(_exhaustive_11(ctx), wrong)
    randoms = _random_11(ctx)
    bad = bad or _first(randoms, lambda M: wrong(M) or berezinian_11(M) != berezinian_block(M))
    return _result(
        "supermatrix.berezinian_formula", bad is None,
        f"Ber b^2 = ab + beta alpha on {_exhaustive_note(ctx)}; literal vs block formula on {len(randoms)} random",
        str(bad),
    )


@claim("supermatrix.berezinian_multiplicative")
def _ber_mul(ctx: Context):
    count = 200 if ctx.full else 30
    shapes = [(1, 1)] * count + [(1, 2), (2, 1)] * (count // 10 or 1)
    bad = None
    for p, q in shapes:
        n = ctx.n_sweep
        M = ctx.rand_matrix(n, p, q, invertible=True)
        N = ctx.rand_matrix(n, p, q, invertible=True)
        try:
            lhs = berezinian(M @ N)
        except DomainError:
            continue  # product D block lost its invertible body
        if lhs != berezinian(M) * berezinian(N):
            bad = (M, N)
            break
    return _result(
        "supermatrix.berezinian_multiplicative", bad is None,
        f"Ber(MN) = Ber M Ber N on {len(shapes)} random pairs, shapes (1|1), (1|2), (2|1)",
        bad and f"M={bad[0]}, N={bad[1]}",
    )


def _odd_triples(ctx: Context):
    evens, odds = _sweep_elements(ctx)
    for al in odds:
        for be in odds:
            for b in evens:
                yield Supermatrix.from_11(0, al, be, b, n=2)


@claim("supermatrix.odd_berezinian_nilpotent")
def _ber_odd(ctx: Context):
    def wrong(M):
        return M.b.body != 0 and not (berezinian(M) ** 2).is_zero()

    bad = _first(_odd_triples(ctx), wrong)
    bad = bad or _first((reduce_odd(M) for M in _random_11(ctx)), wrong)
    return _result(
        "supermatrix.odd_berezinian_nilpotent", bad is None,
        "(Ber M_odd)^2 = 0 on every odd-reduced matrix of the N=2 sweep and the random set",
        str(bad),
    )


@claim("supermatrix.odd_power_closed_form")
def _powers(ctx: Context):
    top = 6

    def wrong(M):
        P = M
        for k in range(2, top + 1):
            P = P @ M
            if odd_power_closed_form(M, k) != P:
                return True
            if supertrace(P) != M.b ** (k - 2) * (M.alpha * M.beta * k - M.b * M.b):
                return True
        return False

    bad = _first(_odd_triples(ctx), wrong)
    randoms = [reduce_odd(M) for M in _random_11(ctx, invertible=False)[:100]]
    bad = bad or _first(randoms, wrong)
    return _result(
        "supermatrix.odd_power_closed_form", bad is None,
        f"closed form = iterated product and str M^n = b^(n-2)(n alpha beta - b^2) for n <= {top}",
        str(bad),
    )


@claim("supermatrix.berezinian_addition")
def _ber_add(ctx: Context):
    def wrong(M):
        return M.b.body != 0 and berezinian(M) != berezinian(reduce_even(M)) + berezinian(reduce_odd(M))

    bad = _first(_exhaustive_11(ctx), wrong) or _first(_random_11(ctx), wrong)
    return _result(
        "supermatrix.berezinian_addition", bad is None,
        f"Ber M = Ber M_even + Ber M_odd on {_exhaustive_note(ctx)} and the random set",
        str(bad),
    )


@claim("supermatrix.grading_preserved")
def _grading(ctx: Context):
    count = 100 if ctx.full else 20
    bad = None
    for p, q in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        for _ in range(count // 4 or 1):
            M, N = ctx.rand_matrix(ctx.n_sweep, p, q), ctx.rand_matrix(ctx.n_sweep, p, q)
            P = M @ N
            try:
                Supermatrix(p, q, [[P[i, j] for j in range(p + q)] for i in range(p + q)], n=P.n)
            except SuperbandError:
                bad = (M, N)
                break
    return _result(
        "supermatrix.grading_preserved", bad is None,
        f"products of random grading-valid matrices stay grading-valid ({count} pairs)",
        bad and f"M={bad[0]}, N={bad[1]}",
    )


def _odd_family(ctx: Context, kind: str) -> list[Supermatrix]:
    """Odd-reduced matrices whose odd entries are all multiples of one odd ``gamma``.

    Then ``alpha_i beta_j = 0`` for every pair in the family, which is what
    closing products needs (the product's corner is ``alpha_1 beta_2``).
    """
    n = max(ctx.n_sweep, 2)
    count = 24 if ctx.full else 8
    gamma = ctx.cached("gamma", lambda: _nonzero_odd(ctx, n))
    out = []
    for _ in range(count):
        al = gamma * ctx.rand_even(n)
        be = gamma * ctx.rand_even(n)
        b = ctx.rand_even(n)
        if kind == "left":
            be = GrassmannElement.zero(n)
        elif kind == "right":
            al = GrassmannElement.zero(n)
        elif kind == "two":
            b = GrassmannElement.zero(n)
        out.append(Supermatrix.from_11(0, al, be, b, n=n))
    return out


def _nonzero_odd(ctx: Context, n: int) -> GrassmannElement:
    while True:
        g = ctx.rand_odd(n)
        if not g.is_zero():
            return g


@claim("supermatrix.pointwise_condition_not_closed")
def _prop1_pointwise(ctx: Context):
    """Each factor having alpha beta = 0 is not enough: the corner alpha_1 beta_2 survives."""
    n = max(ctx.n_sweep, 2)
    g1, g2 = GrassmannElement.generator(n, 1), GrassmannElement.generator(n, 2)
    M1 = Supermatrix.from_11(0, g1, g1, 1, n=n)
    M2 = Supermatrix.from_11(0, g2, g2, 1, n=n)
    P = M1 @ M2
    ok = is_odd_closed(M1) and is_odd_closed(M2) and not P.a.is_zero()
    return _result(
        "supermatrix.pointwise_condition_not_closed", ok,
        f"{M1} * {M2} has corner {P.a}: closure needs alpha_i beta_j = 0 across the set",
        str(P),
    )


def _ideal_claim(ctx: Context, name: str, kind: str, test, side: str):
    fam = _odd_family(ctx, "closed")
    ideal = _odd_family(ctx, kind)
    pairs = []
    if side in ("left", "two"):
        pairs += [(s, x) for s in fam for x in ideal]
    if side in ("right", "two"):
        pairs += [(x, s) for s in fam for x in ideal]
    bad = _first(pairs, lambda p: not test(p[0] @ p[1]))
    return _result(name, bad is None, f"{len(pairs)} products land back in the subset", bad and f"{bad[0]} * {bad[1]}")


def _is_closed_odd(M):
    return M.a.is_zero() and is_odd_closed(M)


@claim("supermatrix.left_ideal_beta_zero")
def _prop1_left(ctx: Context):
    return _ideal_claim(
        ctx, "supermatrix.left_ideal_beta_zero", "left",
        lambda M: _is_closed_odd(M) and M.beta.is_zero(), "left",
    )


@claim("supermatrix.right_ideal_alpha_zero")
def _prop1_right(ctx: Context):
    return _ideal_claim(
        ctx, "supermatrix.right_ideal_alpha_zero", "right",
        lambda M: _is_closed_odd(M) and M.alpha.is_zero(), "right",
    )


@claim("supermatrix.two_sided_ideal_b_zero")
def _prop1_two(ctx: Context):
    return _ideal_claim(
        ctx, "supermatrix.two_sided_ideal_b_zero", "two",
        lambda M: _is_closed_odd(M) and M.b.is_zero(), "two",
    )


# -- band semigroups ---------------------------------------------------------------------


def _wreath(ctx: Context):
    def build():
        grid = B.ParameterGrid.sample(ctx.alpha, ctx.config.grid_rect, pool=ctx.pool)
        return _with_table(B.wreath_family(grid))

    return ctx.cached("wreath", build)


def _null(ctx: Context):
    def build():
        ts = ctx.classes(ctx.config.grid_p, exclude_unit=False)
        return _with_table(B.null_family(ctx.alpha, ts))

    return ctx.cached("null", build)


def _families(ctx: Context) -> list[tuple[str, list, B.CayleyTable]]:
    out = [("wreath", *_wreath(ctx)), ("(1|1)", *ctx.rect()), ("null", *_null(ctx))]
    out.append(("(2|2)", *ctx.band(2)))
    out.append(("(3|3)", *ctx.band(3, 2)))
    pad = B.padded_family(ctx.alpha, 2, 1, 2, ctx.config.grid_band, ctx.pool)
    out.append(("(2|1) padded", *_with_table(pad)))
    return out


@claim("bands.idempotency")
def _idem(ctx: Context):
    checked = 0
    for name, elems, table in _families(ctx):
        if name == "null":
            continue
        for x in elems:
            checked += 1
            if B.multiply(x, x).image_key != x.image_key or B.rep(x) @ B.rep(x) != B.rep(x):
                return _result("bands.idempotency", False, "", f"{name}: {x.label}")
    return _result("bands.idempotency", True, f"x*x = x and M^2 = M for {checked} band elements")


@claim("bands.faithful_mod_alpha")
def _faithful(ctx: Context):
    a = ctx.alpha
    ts = ctx.raw_params(3)
    elems = B.rect_family(a, ts, ts, canonical=False)
    elems += B.higher_family(a, [ts[:3]] * 2, [ts[-2:]] * 2, canonical=False)
    reps = [B.rep(x) for x in elems]
    bad = None
    for i, j in product(range(len(elems)), repeat=2):
        x, y = elems[i], elems[j]
        if x.kind is not y.kind:
            continue
        same = all(alpha_equal(a, s, t) for s, t in zip(x.params, y.params))
        if same != (reps[i] == reps[j]):
            bad = (x.label, y.label)
            break
    return _result(
        "bands.faithful_mod_alpha", bad is None,
        f"rep(x) = rep(y) iff parameters are alpha-equal, {len(elems)} raw elements",
        bad and " vs ".join(bad),
    )


@claim("bands.homomorphism")
def _hom(ctx: Context):
    pairs = 0
    for name, elems, table in _families(ctx):
        reps = [B.rep(x) for x in elems]
        size = len(elems)
        limit = size if (ctx.full or size <= 40) else 40
        for i in range(limit):
            for j in range(limit):
                pairs += 1
                if B.rep(table.products[i][j]) != reps[i] @ reps[j]:
                    return _result(
                        "bands.homomorphism", False, "",
                        f"{name}: {elems[i].label} * {elems[j].label}",
                    )
    return _result("bands.homomorphism", True, f"rep(x*y) = rep(x) rep(y) on {pairs} pairs over 6 families")


# printed wreath-band table, rows and columns in SYMBOLIC_WREATH order
WREATH_TABLE = [
    ["e", "e", "e", "q[t]", "q[u]", "q[u]", "q[t]", "q[w]", "q[w]"],
    ["p[t]", "p[t]", "p[t]", "r[t;t]", "r[t;u]", "r[t;u]", "r[t;t]", "r[t;w]", "r[t;w]"],
    ["p[u]", "p[u]", "p[u]", "r[u;t]", "r[u;u]", "r[u;u]", "r[u;t]", "r[u;w]", "r[u;w]"],
    ["e", "e", "e", "q[t]", "q[u]", "q[u]", "q[t]", "q[w]", "q[w]"],
    ["e", "e", "e", "q[t]", "q[u]", "q[u]", "q[t]", "q[w]", "q[w]"],
    ["p[t]", "p[t]", "p[t]", "r[t;t]", "r[t;u]", "r[t;u]", "r[t;t]", "r[t;w]", "r[t;w]"],
    ["p[u]", "p[u]", "p[u]", "r[u;t]", "r[u;u]", "r[u;u]", "r[u;t]", "r[u;w]", "r[u;w]"],
    ["p[t]", "p[t]", "p[t]", "r[t;t]", "r[t;u]", "r[t;u]", "r[t;t]", "r[t;w]", "r[t;w]"],
    ["p[v]", "p[v]", "p[v]", "r[v;t]", "r[v;u]", "r[v;u]", "r[v;t]", "r[v;w]", "r[v;w]"],
]


@claim("bands.wreath_cayley_table")
def _wreath_table(ctx: Context):
    table = B.cayley_table(B.symbolic_wreath())
    grid = table.label_grid()
    bad = _first(
        product(range(9), repeat=2), lambda ij: grid[ij[0]][ij[1]] != WREATH_TABLE[ij[0]][ij[1]]
    )
    cell = bad and (table.labels[bad[0]], table.labels[bad[1]], grid[bad[0]][bad[1]])
    return _result(
        "bands.wreath_cayley_table", bad is None, "symbolic 9x9 table matches the printed one in all 81 cells",
        cell and f"row {cell[0]}, col {cell[1]}: got {cell[2]}",
    )


@claim("bands.wreath_associativity")
def _wreath_assoc(ctx: Context):
    sym = B.cayley_table(B.symbolic_wreath())
    bad = B.find_nonassociative(sym)
    elems, table = _wreath(ctx)
    bad2 = B.find_nonassociative(table)
    ok = bad is None and bad2 is None and table.closed
    return _result(
        "bands.wreath_associativity", ok,
        f"729 symbolic triples; {table.size ** 3} triples on the closed {table.size}-element grid",
        f"symbolic {bad}, grid {bad2}",
    )


@claim("bands.null_products")
def _null_products(ctx: Context):
    elems, table = _null(ctx)
    zero = B.zero(ctx.alpha)
    ok = all(x.image_key == zero.image_key for row in table.products for x in row)
    ok = ok and all(B.rep(x) @ B.rep(y) == B.rep(zero) for x in elems for y in elems)
    return _result("bands.null_products", ok, f"every product of {len(elems)} null elements is Z")


@claim("bands.null_zero_minimal_ideal")
def _null_minimal(ctx: Context):
    elems, table = _null(ctx)
    zero = 0
    bad = None
    for i in range(1, len(elems)):
        if not S.is_zero_minimal_ideal(table, [i, zero], zero):
            bad = elems[i].label
            break
    ok = bad is None and len(elems) >= 2
    if len(elems) < 5:
        ctx.warn(f"null family has {len(elems)} elements (5 requested)")
    return _result(
        "bands.null_zero_minimal_ideal", ok,
        f"{{Y(t), Z}} is a 0-minimal ideal for each of {len(elems) - 1} parameters ({len(elems)} elements)",
        f"fails for {bad}",
    )


def _pq_tables(ctx: Context):
    cls = ctx.classes(ctx.config.grid_p)
    return [
        ("P", _with_table(B.p_family(ctx.alpha, cls))),
        ("Q", _with_table(B.q_family(ctx.alpha, cls))),
    ]


@claim("bands.no_zero_no_identity")
def _no_zero(ctx: Context):
    cls = ctx.classes(ctx.config.grid_p)
    if len(cls) < 2:
        return CheckResult("bands.no_zero_no_identity", SKIP, "needs at least 2 parameter classes")
    bad = None
    for name, (elems, table) in _pq_tables(ctx):
        if S.two_sided_zeros(table) or S.two_sided_identities(table):
            bad = name
    return _result(
        "bands.no_zero_no_identity", bad is None,
        f"no two-sided zero or identity on P and Q grids with {len(cls)} classes",
        f"{bad} grid",
    )


@claim("bands.regular_not_inverse")
def _regular(ctx: Context):
    cls = ctx.classes(ctx.config.grid_p)
    if len(cls) < 2:
        return CheckResult("bands.regular_not_inverse", SKIP, "needs at least 2 parameter classes")
    ok = True
    for name, (elems, table) in _pq_tables(ctx):
        idx = table.index
        sandwich = all(idx[idx[i, j], i] == i for i in range(table.size) for j in range(table.size))
        many = any(len(S.inverses(table, i)) >= 2 for i in range(table.size))
        ok = ok and sandwich and many and S.is_regular(table)
    return _result(
        "bands.regular_not_inverse", ok,
        "x*y*x = x for all pairs; some element has at least 2 inverses (P and Q grids)",
    )


@claim("bands.p_ideal_structure")
def _p_ideals(ctx: Context):
    (_, (elems, table)), _q = _pq_tables(ctx)
    keys = table.keys
    right = all({keys[k] for k in table.index[i, :]} == {keys[i]} for i in range(table.size))
    left = all({keys[k] for k in table.index[:, i]} == set(keys) for i in range(table.size))
    return _result(
        "bands.p_ideal_structure", right and left,
        "p_t * S = {p_t} and S * p_t = S on the P grid",
        f"right={right} left={left}",
    )


@claim("bands.higher_product_law")
def _ff(ctx: Context):
    count = 0
    for n in (1, 2, 3):
        elems, table = ctx.band(n, ctx.config.grid_band if n < 3 else 2)
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                xy = table.products[i][j]
                count += 1
                if xy.t != x.t or xy.u != y.u:
                    return _result("bands.higher_product_law", False, "", f"{x.label} * {y.label} = {xy.label}")
        if not table.closed or not B.associativity_check(table):
            return _result("bands.higher_product_law", False, "", f"({n}|{n}) table not closed/associative")
    return _result(
        "bands.higher_product_law", True,
        f"f[t;u] * f[t';u'] = f[t;u'] on {count} pairs, (n|n) grids for n <= 3; closed and associative",
    )


@claim("bands.decomposition")
def _decomp(ctx: Context):
    elems = list(ctx.rect()[0]) + list(ctx.band(2)[0])
    one = B.unit_param(ctx.alpha)
    cls = ctx.classes(2)
    elems.append(B.f(ctx.alpha, [one, one], cls[:2] if len(cls) >= 2 else [cls[0], cls[0]]))
    bad = None
    for x in elems:
        left, right = B.band_decompose(x)
        back = B.recompose(left, right)
        if back.image_key != x.image_key or B.rep(back) != B.rep(x):
            bad = x.label
            break
    return _result(
        "bands.decomposition", bad is None,
        f"{len(elems)} elements split into left and right factors and recompose exactly",
        bad,
    )


@claim("bands.block_isomorphism")
def _iso(ctx: Context):
    reports = [B.block_isomorphism(1, 1, 1, ctx.alpha), B.block_isomorphism(4, 2, 2, ctx.alpha)]
    if ctx.full:
        reports.append(B.block_isomorphism(6, 2, 3, ctx.alpha, samples=2))
    bad = _first(reports, lambda r: not r.ok)
    try:
        B.block_isomorphism(3, 2, 2, ctx.alpha)
        rejected = False
    except DomainError:
        rejected = True
    ok = bad is None and rejected
    shapes = ", ".join(f"({r.n};{r.k},{r.m})" for r in reports)
    return _result(
        "bands.block_isomorphism", ok,
        f"(1|n) and (k|m) block forms agree and multiply alike for (n;k,m) = {shapes}; n != km rejected",
        bad and str(bad),
    )


@claim("bands.irreducibility")
def _irred(ctx: Context):
    if len(ctx.classes(4)) < 2:
        return CheckResult("bands.irreducibility", SKIP, "needs at least 2 parameter classes")
    reports = [B.irreducibility_witness(k, m, ctx.alpha) for k, m in ((2, 1), (1, 2), (2, 2))]
    bad = _first(reports, lambda r: not r.ok)
    r22 = reports[-1]
    return _result(
        "bands.irreducibility", bad is None,
        f"(2|2): {' * '.join(r22.chain)} = {r22.chain_product}; varying {r22.varied_parameter} "
        "changes the (2|2) matrix but not the chain",
        bad and str(bad),
    )


@claim("bands.not_cancellative")
def _cancel(ctx: Context):
    if ctx.ann().dim == 0:
        ctx.warn("Ann(alpha) is zero: no alpha-equal distinct labels exist")
        return CheckResult("bands.not_cancellative", SKIP, "Ann(alpha) = 0, no raw witness possible")
    elems = B.p_family(ctx.alpha, ctx.raw_params(3), canonical=False)
    table = B.cayley_table(elems)
    w = S.non_cancellative_witness(table)
    ok = w is not None and table.keys[w[1]] == table.keys[w[2]]
    detail = "no witness"
    if w:
        a, b, c = (elems[i].label for i in w)
        detail = f"{a} * {b} = {a} * {c} with {b} != {c} as labels"
    return _result("bands.not_cancellative", ok, detail, detail)


# -- Green's relations -----------------------------------------------------------------------


@claim("green.p_grid_relations")
def _p_grid(ctx: Context):
    a = ctx.alpha
    params = ctx.raw_params(ctx.config.grid_p)
    out = []
    for name, elems in (("P", B.p_family(a, params, canonical=False)), ("Q", B.q_family(a, params, canonical=False))):
        g = G.greens_classes(B.cayley_table(elems))
        delta = G.delta_partition(elems)
        fixed, free = (g.R, g.L) if name == "P" else (g.L, g.R)
        out.append(fixed == delta and free.is_universal())
    return _result(
        "green.p_grid_relations", all(out),
        f"P grid: R = alpha-equality, L universal; Q grid dually ({len(params)} raw parameters)",
        f"P ok={out[0]}, Q ok={out[1]}",
    )


@claim("green.rect_h_double_delta")
def _rect_h(ctx: Context):
    a = ctx.alpha
    ts = ctx.raw_params(ctx.config.grid_rect)
    raw = B.rect_family(a, ts, ts, canonical=False)
    ok = True
    for elems, table in (ctx.rect(), _with_table(raw)):
        ok = ok and G.greens_classes(table).H == G.delta_partition(elems, "double")
    return _result(
        "green.rect_h_double_delta", ok,
        f"H = double alpha-equality on canonical and raw (1|1) grids ({len(raw)} raw elements)",
    )


@claim("green.rect_d_j_universal")
def _rect_dj(ctx: Context):
    elems, table = ctx.rect()
    g = G.greens_classes(table)
    ok = g.D.is_universal() and g.J.is_universal() and g.D == g.J
    return _result("green.rect_d_j_universal", ok, f"D = J = universal on {len(elems)} (1|1) elements")


@claim("green.psi_epimorphism")
def _psi(ctx: Context):
    elems, table = ctx.rect()
    rep = G.psi_map(table)
    ok = rep.ok and rep.is_injective
    return _result(
        "green.psi_epimorphism", ok,
        f"psi onto {rep.n_r} x {rep.n_l} (R, L) pairs is a surjective homomorphism, bijective on the canonical grid",
        str(rep),
    )


@claim("green.psi_not_injective_raw")
def _psi_raw(ctx: Context):
    if ctx.ann().dim == 0:
        ctx.warn("Ann(alpha) is zero: psi cannot collide on raw labels")
        return CheckResult("green.psi_not_injective_raw", SKIP, "Ann(alpha) = 0")
    ts = ctx.raw_params(2)
    elems = B.rect_family(ctx.alpha, ts, ts, canonical=False)
    rep = G.psi_map(B.cayley_table(elems))
    ok = rep.ok and rep.non_injective_witness is not None
    w = rep.non_injective_witness
    return _result(
        "green.psi_not_injective_raw", ok,
        f"psi({w[0]}) = psi({w[1]})" if w else "no witness",
        str(rep),
    )


def _fine(elems, n):
    return (
        [G.fine_relation(elems, "R", k) for k in range(1, n + 1)],
        [G.fine_relation(elems, "L", k) for k in range(1, n + 1)],
    )


def _nn_grids(ctx: Context):
    return [(2, *ctx.band(2)), (3, *ctx.band(3, 2))]


@claim("green.nn_classes_fix_parameters")
def _nn_fix(ctx: Context):
    ok = True
    for n, elems, table in _nn_grids(ctx):
        g = G.greens_classes(table)
        a = ctx.alpha
        r_pred = G.Partition.from_key(tuple(a * t for t in x.t) for x in elems)
        l_pred = G.Partition.from_key(tuple(a * u for u in x.u) for x in elems)
        ok = ok and g.R == r_pred and g.L == l_pred and g.H == G.delta_partition(elems, "n_ple")
    return _result("green.nn_classes_fix_parameters", ok, "R fixes all alpha t_k, L all alpha u_k on (2|2) and (3|3) grids")


def _lattice_claim(ctx: Context, name: str, which: str):
    ok = True
    for n, elems, table in _nn_grids(ctx):
        g = G.greens_classes(table)
        Rs, Ls = _fine(elems, n)
        if which == "R":
            ok = ok and G.meet(*Rs) == g.R
        elif which == "L":
            ok = ok and G.meet(*Ls) == g.L
        elif which == "H":
            ok = ok and G.meet(*Rs, *Ls) == g.H
        else:
            ok = ok and G.join(G.meet(*Rs), G.meet(*Ls)) == g.D
    return ok


@claim("green.fine_meet_r")
def _rrr(ctx: Context):
    return _result("green.fine_meet_r", _lattice_claim(ctx, "", "R"), "meet of R^(k) over k = R on (2|2) and (3|3)")


@claim("green.fine_meet_l")
def _lll(ctx: Context):
    return _result("green.fine_meet_l", _lattice_claim(ctx, "", "L"), "meet of L^(k) over k = L on (2|2) and (3|3)")


@claim("green.fine_meet_h")
def _rrllh(ctx: Context):
    return _result("green.fine_meet_h", _lattice_claim(ctx, "", "H"), "meet of all R^(k), L^(k) = H")


@claim("green.fine_join_d")
def _rrlld(ctx: Context):
    return _result("green.fine_join_d", _lattice_claim(ctx, "", "D"), "join(meet R^(k), meet L^(k)) = D")


@claim("green.mixed_families")
def _mixed(ctx: Context):
    total = 0
    ok = True
    for n, elems, table in _nn_grids(ctx):
        g = G.greens_classes(table)
        for family, names in G.mixed_families(n).items():
            for nm in names:
                G.relation(nm, elems)
                total += 1
        full = "".join(str(k) for k in range(1, n + 1))
        ok = ok and G.relation(f"H({full}|{full})", elems) == g.H
        ok = ok and G.relation(f"D({full}|{full})", elems) == g.D
    return _result(
        "green.mixed_families", ok,
        f"{total} relations of the six mixed families computed; H(1..n|1..n) = H and D(1..n|1..n) = D",
    )


@claim("green.restriction_theorem")
def _restrict(ctx: Context):
    checked = []
    for n in (2, 3):
        free_classes = 3 if (ctx.full or n == 2) else 2
        fixed_classes = 2
        big = ctx.classes(free_classes)
        small = ctx.classes(fixed_classes)
        for k in range(1, n + 1):
            choices = [big if i == k else small for i in range(1, n + 1)]
            elems, table = ctx.cached(
                ("restrict", n, k, free_classes),
                lambda: _with_table(B.higher_family(ctx.alpha, choices, choices)),
            )
            bases = [elems[0], elems[-1]]
            for base in bases:
                spec = G.SubsemigroupSpec.all_but(base, k)
                rep = G.subsemigroup_restriction(spec, elems, k, table)
                checked.append((n, k, rep))
    bad = _first(checked, lambda c: not c[2].ok)
    return _result(
        "green.restriction_theorem", bad is None,
        f"R, L, H, D of U^(k) = restricted R^(k), L^(k), H^(k|k), D^(k|k) for every k on (2|2) and (3|3) "
        f"({len(checked)} subsemigroups)",
        bad and f"({bad[0]}|{bad[0]}) k={bad[1]}: {bad[2].equalities}",
    )


@claim("green.j_universal")
def _j(ctx: Context):
    tables = [ctx.rect()[1], ctx.band(2)[1]]
    ok = all(G.j_universal_check(t) for t in tables)
    return _result("green.j_universal", ok, "J universal and x*y*x = x on (1|1) and (2|2) grids")


@claim("green.eggbox")
def _eggbox(ctx: Context):
    elems, table = ctx.rect()
    g = G.greens_classes(table)
    labels = table.labels
    box = G.eggbox(labels, [("R", g.R), ("L", g.L)])
    cls = ctx.config.grid_rect
    flat = box.is_partition() and all(len(v) == 1 for v in box.cells.values())
    cells_ok = all(
        set(box.positions[(i, j)]) == set(g.R.blocks[i]) & set(g.L.blocks[j])
        for i, j in box.positions
    )
    elems2, table2 = ctx.band(2)
    R1, R2, L1 = G.fine_relation(elems2, "R", 1), G.fine_relation(elems2, "R", 2), G.fine_relation(elems2, "L", 1)
    box3 = G.eggbox(table2.labels, [("R1", R1), ("R2", R2), ("L1", L1)])
    ok = flat and cells_ok and box3.is_partition() and box3.dim == 3
    return _result(
        "green.eggbox", ok,
        f"(1|1) R x L box is {box.classes_per_axis[0]} x {box.classes_per_axis[1]} with one element per cell "
        f"({cls} classes); (2|2) box on R1, R2, L1 is {'x'.join(map(str, box3.classes_per_axis))}",
    )


@claim("green.lattice_laws")
def _lattice(ctx: Context):
    elems, table = ctx.band(2)
    Rs, Ls = _fine(elems, 2)
    parts = Rs + Ls + [G.greens_classes(table).H]
    size = len(elems)
    uni = G.Partition.universal(size)
    disc = G.Partition.discrete(size)
    ok = True
    for p in parts:
        ok = ok and G.meet(p, p) == p and G.join(p, p) == p
        ok = ok and G.meet(p, uni) == p and G.join(p, disc) == p
    for p, q in product(parts, repeat=2):
        ok = ok and G.meet(p, q) == G.meet(q, p) and G.join(p, q) == G.join(q, p)
        ok = ok and G.meet(p, q).refines(p) and p.refines(G.join(p, q))
    for p, q, r in product(parts, repeat=3):
        ok = ok and G.meet(G.meet(p, q), r) == G.meet(p, G.meet(q, r))
        ok = ok and G.join(G.join(p, q), r) == G.join(p, G.join(q, r))
    return _result(
        "green.lattice_laws", ok,
        f"meet and join idempotent, commutative, associative on {len(parts)} partitions of the (2|2) grid",
    )


# -- driver -------------------------------------------------------------------------------------


def run(config: RunConfig, only: Iterable[str] | None = None) -> Report:
    ctx = Context(config)
    if ctx.ann().dim == 0:
        ctx.warn("Ann(alpha) is zero in this algebra; alpha-equality is plain equality")
    wanted = set(only) if only else None
    results = []
    for name, fn in CLAIMS:
        if wanted is not None and name not in wanted:
            continue
        try:
            results.append(fn(ctx))
        except SuperbandError as exc:
            results.append(CheckResult(name, FAIL, "raised an error", f"{type(exc).__name__}: {exc}"))
    return Report(config.describe(), results, ctx.warnings)


def claim_names() -> list[str]:
    return [name for name, _ in CLAIMS]
