"""Bounded law checking with minimal counterexamples.

Each law is a pair of composites evaluated over a product of input spaces.
Inputs are visited in lexicographic val_order of the declared input tuple,
so the first failure found is the minimal witness among the visited cases.
"""

from __future__ import annotations

import enum
import logging
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from lawbench.errors import UsageError
from lawbench.monads import ListMonad, Monad, sequence_values
from lawbench.schemas import Bounds
from lawbench.strength import (
    StrengthSpec,
    derived_strength,
    extend_gamma,
    lst,
    lst_gamma,
    reconstruct_gamma,
    rst,
    rst_gamma,
)
from lawbench.terms import Signature, enumerate_terms, term_fmap
from lawbench.values import (
    Atom,
    FnTable,
    ListV,
    Product,
    Space,
    Val,
    as_space,
    components,
    function_quantifier,
    product_value,
    sample_indices,
)

logger = logging.getLogger(__name__)


class LawId(str, enum.Enum):
    MONAD_LEFT_UNIT = "MONAD_LEFT_UNIT"
    MONAD_RIGHT_UNIT = "MONAD_RIGHT_UNIT"
    MONAD_ASSOC = "MONAD_ASSOC"
    FUNCTOR_ID = "FUNCTOR_ID"
    FUNCTOR_COMP = "FUNCTOR_COMP"
    PRESTRENGTH_NATURALITY = "PRESTRENGTH_NATURALITY"
    GAMMA_A = "GAMMA_A"
    GAMMA_B = "GAMMA_B"
    GAMMA_ASSOC = "GAMMA_ASSOC"
    LIFT_C = "LIFT_C"
    LIFT_D = "LIFT_D"
    RST_LIFT_1 = "RST_LIFT_1"
    RST_LIFT_2 = "RST_LIFT_2"
    COMMUTATIVE = "COMMUTATIVE"
    PRODUCT_COHERENCE = "PRODUCT_COHERENCE"
    DL_NATURALITY = "DL_NATURALITY"
    DL_A = "DL_A"
    DL_B = "DL_B"
    DL_C = "DL_C"
    DL_D = "DL_D"
    MAP_LIFT_FUNCTORIAL = "MAP_LIFT_FUNCTORIAL"
    RECONSTRUCT = "RECONSTRUCT"
    COMPOSITE_BIND = "COMPOSITE_BIND"
    EQUIVALENCE = "EQUIVALENCE"


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "VACUOUS"


class Mode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class Counterexample:
    inputs: tuple[tuple[str, Val], ...]
    lhs: Val
    rhs: Val
    lhs_path: str
    rhs_path: str
    divergence: int | None = None

    def input(self, name: str) -> Val:
        return dict(self.inputs)[name]


@dataclass(frozen=True)
class LawReport:
    law: LawId
    subject: str
    status: Status
    cases_checked: int
    mode: Mode
    bounds: Bounds
    witness: Counterexample | None = None
    expected: Status | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def matched(self) -> bool:
        if self.expected is not None:
            return self.status == self.expected
        return self.status != Status.FAIL

    def expecting(self, status: Status) -> LawReport:
        return LawReport(
            self.law,
            self.subject,
            self.status,
            self.cases_checked,
            self.mode,
            self.bounds,
            self.witness,
            status,
            self.elapsed,
        )


@dataclass(frozen=True)
class Law:
    """One quantified equation ``lhs(*inputs) == rhs(*inputs)``."""

    law: LawId
    subject: str
    names: tuple[str, ...]
    spaces: tuple[Space, ...]
    lhs: Callable[..., Val]
    rhs: Callable[..., Val]
    lhs_path: str
    rhs_path: str


@dataclass(frozen=True)
class _Hit:
    position: int
    args: tuple[Val, ...]
    lhs: Val
    rhs: Val


def _first_failure(law: Law, cases) -> _Hit | None:
    for position, args in cases:
        left, right = law.lhs(*args), law.rhs(*args)
        if left != right:
            return _Hit(position, args, left, right)
    return None


def first_divergence(left: Val, right: Val) -> int | None:
    """Index of the first differing element of two lists; None unless both are lists."""
    if not (isinstance(left, ListV) and isinstance(right, ListV)):
        return None
    for index, (x, y) in enumerate(zip(left.items, right.items)):
        if x != y:
            return index
    return min(len(left.items), len(right.items))


def run_law(law: Law, bounds: Bounds, *, workers: int = 1) -> LawReport:
    """Evaluate both sides of ``law`` on every visited input tuple."""
    started = time.perf_counter()
    space = Product(law.spaces)
    total = space.size
    if total == 0:
        logger.warning("%s on %s is vacuous: an input space is empty", law.law.value, law.subject)
        return LawReport(law.law, law.subject, Status.VACUOUS, 0, Mode.EXHAUSTIVE, bounds)

    if total <= bounds.maxCases:
        mode = Mode.SAMPLED if space.sampled else Mode.EXHAUSTIVE
        visited = total

        def cases(start: int = 0, stop: int = total):
            if start == 0 and stop == total:
                return enumerate(space)
            return ((i, space.at(i)) for i in range(start, stop))

    else:
        mode = Mode.SAMPLED
        picks = sample_indices(total, bounds.maxCases, bounds.sampleSeed, salt=law.law.value)
        visited = len(picks)
        logger.debug("%s: sampling %d of %d cases", law.law.value, visited, total)

        def cases(start: int = 0, stop: int = visited):
            return ((i, space.at(picks[i])) for i in range(start, stop))

    hit = _scan(law, cases, visited, workers)
    elapsed = time.perf_counter() - started
    if hit is None:
        logger.debug("%s %s: PASS over %d cases", law.law.value, law.subject, visited)
        return LawReport(law.law, law.subject, Status.PASS, visited, mode, bounds, elapsed=elapsed)

    witness = Counterexample(
        tuple(zip(law.names, hit.args)),
        hit.lhs,
        hit.rhs,
        law.lhs_path,
        law.rhs_path,
        first_divergence(hit.lhs, hit.rhs),
    )
    logger.debug("%s %s: FAIL at case %d", law.law.value, law.subject, hit.position + 1)
    return LawReport(
        law.law, law.subject, Status.FAIL, hit.position + 1, mode, bounds, witness, elapsed=elapsed
    )


def _scan(law: Law, cases, visited: int, workers: int) -> _Hit | None:
    if workers <= 1 or visited < 2 * workers:
        return _first_failure(law, cases())
    # contiguous chunks; the lowest failing chunk holds the minimal witness
    chunk = -(-visited // (workers * 4))
    spans = [(start, min(start + chunk, visited)) for start in range(0, visited, chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        hits = list(pool.map(lambda span: _first_failure(law, cases(*span)), spans))
    found = [hit for hit in hits if hit is not None]
    return min(found, key=lambda hit: hit.position) if found else None


def _functions(domain: Space, codomain: Space, bounds: Bounds) -> Space:
    """Quantifier over tables, as FnV values."""
    return function_quantifier(domain, codomain, bounds)


def _run_all(laws: Sequence[Law], bounds: Bounds, workers: int) -> list[LawReport]:
    return [run_law(law, bounds, workers=workers) for law in laws]


def check_monad_laws(
    m: Monad, A: Space | Sequence[Val], bounds: Bounds, *, workers: int = 1
) -> list[LawReport]:
    """Unit, associativity and functor laws of ``m`` over ``A``."""
    if m.stacked:
        bounds = bounds.nested()
    A = as_space(A)
    MA = m.carrier(A, bounds)
    kleisli = _functions(A, MA, bounds)
    plain = _functions(A, A, bounds)
    identity = FnTable.identity(A.to_list())
    subject = m.describe()

    def compose(f: FnTable, g: FnTable) -> FnTable:
        return FnTable.from_callable(f.domain, lambda a: g.apply(f.apply(a)))

    laws = [
        Law(
            LawId.MONAD_LEFT_UNIT, subject, ("a", "f"), (A, kleisli),
            lambda a, f: m.bind(m.unit(a), f.table),
            lambda a, f: f.table.apply(a),
            "μ ∘ Hf ∘ η", "f",
        ),
        Law(
            LawId.MONAD_RIGHT_UNIT, subject, ("ma",), (MA,),
            lambda ma: m.bind_fn(ma, m.unit),
            lambda ma: ma,
            "μ ∘ Hη", "id",
        ),
        Law(
            LawId.MONAD_ASSOC, subject, ("ma", "f", "g"), (MA, kleisli, kleisli),
            lambda ma, f, g: m.bind(m.bind(ma, f.table), g.table),
            lambda ma, f, g: m.bind_fn(ma, lambda a: m.bind(f.table.apply(a), g.table)),
            "g♯ ∘ f♯", "(g♯ ∘ f)♯",
        ),
        Law(
            LawId.FUNCTOR_ID, subject, ("ma",), (MA,),
            lambda ma: m.fmap(identity, ma),
            lambda ma: ma,
            "H id", "id",
        ),
        Law(
            LawId.FUNCTOR_COMP, subject, ("ma", "f", "g"), (MA, plain, plain),
            lambda ma, f, g: m.fmap(compose(f.table, g.table), ma),
            lambda ma, f, g: m.fmap(g.table, m.fmap(f.table, ma)),
            "H(g ∘ f)", "Hg ∘ Hf",
        ),
    ]  # fmt: skip
    return _run_all(laws, bounds, workers)


def _require_arity(gamma: StrengthSpec, universes: Sequence) -> None:
    if len(universes) != gamma.order:
        raise UsageError(
            f"arity mismatch: {gamma.name} has order {gamma.order}, got {len(universes)} universes"
        )


def _pointwise(fs: Sequence[Val], p: Val) -> Val:
    n = len(fs)
    return product_value([f.table.apply(c) for f, c in zip(fs, components(p, n))])


def _input_names(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def check_prestrength_naturality(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """Γ ∘ (K f1 × ... × K fn) = K(f1 × ... × fn) ∘ Γ."""
    _require_arity(gamma, universes)
    m, n = gamma.monad, gamma.order
    spaces = [as_space(u) for u in universes]
    carriers = [m.carrier(V, bounds) for V in spaces]
    tables = [_functions(V, V, bounds) for V in spaces]
    law = Law(
        LawId.PRESTRENGTH_NATURALITY,
        gamma.describe(),
        _input_names("x", n) + _input_names("f", n),
        tuple(carriers + tables),
        lambda *args: gamma.apply([m.fmap(f.table, x) for x, f in zip(args[:n], args[n:])]),
        lambda *args: m.fmap_fn(lambda p: _pointwise(args[n:], p), gamma.apply(args[:n])),
        "Γ ∘ (Kf×…×Kf)",
        "K(f×…×f) ∘ Γ",
    )
    return run_law(law, bounds, workers=workers)


def check_gamma_A(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """Γ(unit v1, ..., unit vn) = unit (v1, ..., vn)."""
    _require_arity(gamma, universes)
    m, n = gamma.monad, gamma.order
    law = Law(
        LawId.GAMMA_A,
        gamma.describe(),
        _input_names("v", n),
        tuple(as_space(u) for u in universes),
        lambda *vs: gamma.apply([m.unit(v) for v in vs]),
        lambda *vs: m.unit(product_value(vs)),
        "Γ ∘ (ρ×…×ρ)",
        "ρ",
    )
    return run_law(law, bounds, workers=workers)


def _join_path(n: int) -> str:
    return "Γ ∘ (" + "×".join(["ν"] * n) + ")" if n else "Γ"


def check_gamma_B(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """join ∘ K Γ ∘ Γ_K = Γ ∘ (join × ... × join)."""
    _require_arity(gamma, universes)
    m, n = gamma.monad, gamma.order
    nested = [m.carrier(m.carrier(as_space(u), bounds), bounds) for u in universes]
    law = Law(
        LawId.GAMMA_B,
        gamma.describe(),
        _input_names("u", n),
        tuple(nested),
        lambda *us: m.join(m.fmap_fn(lambda p: gamma.apply(components(p, n)), gamma.apply(us))),
        lambda *us: gamma.apply([m.join(u) for u in us]),
        "ν ∘ KΓ ∘ Γ_K",
        _join_path(n),
    )
    return run_law(law, bounds, workers=workers)


def check_kleisli_strength(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> list[LawReport]:
    """Naturality, ΓA and ΓB; at order 1 this is exactly the monad-map check."""
    return [
        check_prestrength_naturality(gamma, universes, bounds, workers=workers),
        check_gamma_A(gamma, universes, bounds, workers=workers),
        check_gamma_B(gamma, universes, bounds, workers=workers),
    ]


def check_gamma_assoc(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """Γ ∘ (Γ × 1) = Γ ∘ (1 × Γ) after flattening to triples."""
    if gamma.order != 2:
        raise UsageError(
            f"associativity needs an order-2 strength, {gamma.name} has order {gamma.order}"
        )
    if len(universes) != 3:
        raise UsageError(
            f"arity mismatch: associativity quantifies over 3 universes, got {len(universes)}"
        )
    m = gamma.monad
    left, right = extend_gamma(gamma, 3, "left"), extend_gamma(gamma, 3, "right")
    law = Law(
        LawId.GAMMA_ASSOC,
        gamma.describe(),
        ("x1", "x2", "x3"),
        tuple(m.carrier(as_space(u), bounds) for u in universes),
        lambda *xs: left.apply(xs),
        lambda *xs: right.apply(xs),
        "Γ ∘ (Γ×1)",
        "Γ ∘ (1×Γ)",
    )
    return run_law(law, bounds, workers=workers)


class Functor(ABC):
    """Endofunctor F of a lifting transformation λ : FH -> KF."""

    name = "F"

    @abstractmethod
    def space(self, base: Space, bounds: Bounds) -> Space: ...

    @abstractmethod
    def map_fn(self, fn: Callable[[Val], Val], x: Val) -> Val: ...


class IdentityFunctor(Functor):
    name = "identity"

    def space(self, base, bounds):
        return base

    def map_fn(self, fn, x):
        return fn(x)


class ProductFunctor(Functor):
    """Diagonal n-fold product ``X -> X^n``."""

    def __init__(self, n: int):
        self.n = n
        self.name = f"×{n}"

    def space(self, base, bounds):
        return Product([base] * self.n, build=product_value)

    def map_fn(self, fn, x):
        return product_value([fn(c) for c in components(x, self.n)])


class ListFunctor(Functor):
    name = "list"

    def space(self, base, bounds):
        return ListMonad("list-functor").carrier(base, bounds)

    def map_fn(self, fn, x):
        return ListV(tuple(map(fn, x.items)))


class TermFunctor(Functor):
    def __init__(self, signature: Signature):
        self.signature = signature
        self.name = f"{signature.name}@"

    def space(self, base, bounds):
        return enumerate_terms(self.signature, base, bounds.maxTreeDepth)

    def map_fn(self, fn, x):
        return term_fmap(fn, x)


def functor_named(name: str, *, order: int = 2, signature: Signature | None = None) -> Functor:
    if name == "identity":
        return IdentityFunctor()
    if name in ("product", "×"):
        return ProductFunctor(order)
    if name == "list":
        return ListFunctor()
    if name == "terms" and signature is not None:
        return TermFunctor(signature)
    raise UsageError(f"unknown functor {name!r}")


def check_lift_transformation(
    functor: Functor,
    H: Monad,
    K: Monad,
    lam: Callable[[Val], Val],
    A: Space | Sequence[Val],
    bounds: Bounds,
    *,
    subject: str | None = None,
    workers: int = 1,
) -> list[LawReport]:
    """λ ∘ Fη = ρF and λ ∘ Fμ = νF ∘ Kλ ∘ λH."""
    A = as_space(A)
    subject = subject or f"{functor.name}: {H.name} -> {K.name}"
    FA = functor.space(A, bounds)
    FHHA = functor.space(H.carrier(H.carrier(A, bounds), bounds), bounds)
    laws = [
        Law(
            LawId.LIFT_C, subject, ("x",), (FA,),
            lambda x: lam(functor.map_fn(H.unit, x)),
            lambda x: K.unit(x),
            "λ ∘ Fη", "ρF",
        ),
        Law(
            LawId.LIFT_D, subject, ("x",), (FHHA,),
            lambda x: lam(functor.map_fn(H.join, x)),
            lambda x: K.join(K.fmap_fn(lam, lam(x))),
            "λ ∘ Fμ", "νF ∘ Kλ ∘ λH",
        ),
    ]  # fmt: skip
    return _run_all(laws, bounds, workers)


def check_rst_lift(
    m: Monad,
    A: Space | Sequence[Val],
    B: Space | Sequence[Val],
    bounds: Bounds,
    *,
    workers: int = 1,
) -> list[LawReport]:
    """rst and lst are lifting transformations: two equations each."""
    A, B = as_space(A), as_space(B)
    subject = m.describe()
    MMB = m.carrier(m.carrier(B, bounds), bounds)
    MMA = m.carrier(m.carrier(A, bounds), bounds)
    laws = [
        Law(
            LawId.RST_LIFT_1, f"rst {subject}", ("a", "b"), (A, B),
            lambda a, b: rst(m, a, m.unit(b)),
            lambda a, b: m.unit(product_value((a, b))),
            "rst ∘ (1×η)", "η",
        ),
        Law(
            LawId.RST_LIFT_2, f"rst {subject}", ("a", "mmb"), (A, MMB),
            lambda a, mmb: rst(m, a, m.join(mmb)),
            lambda a, mmb: m.join(m.fmap_fn(lambda p: rst(m, p.fst, p.snd), rst(m, a, mmb))),
            "rst ∘ (1×μ)", "μ ∘ M(rst) ∘ rst",
        ),
        Law(
            LawId.RST_LIFT_1, f"lst {subject}", ("a", "b"), (A, B),
            lambda a, b: lst(m, m.unit(a), b),
            lambda a, b: m.unit(product_value((a, b))),
            "lst ∘ (η×1)", "η",
        ),
        Law(
            LawId.RST_LIFT_2, f"lst {subject}", ("mma", "b"), (MMA, B),
            lambda mma, b: lst(m, m.join(mma), b),
            lambda mma, b: m.join(m.fmap_fn(lambda p: lst(m, p.fst, p.snd), lst(m, mma, b))),
            "lst ∘ (μ×1)", "μ ∘ M(lst) ∘ lst",
        ),
    ]  # fmt: skip
    return _run_all(laws, bounds, workers)


def check_commutative(
    m: Monad,
    A: Space | Sequence[Val],
    B: Space | Sequence[Val],
    bounds: Bounds,
    *,
    workers: int = 1,
) -> LawReport:
    """lstΓ = rstΓ pointwise."""
    law = Law(
        LawId.COMMUTATIVE,
        m.describe(),
        ("ma", "mb"),
        (m.carrier(as_space(A), bounds), m.carrier(as_space(B), bounds)),
        lambda ma, mb: lst_gamma(m, ma, mb),
        lambda ma, mb: rst_gamma(m, ma, mb),
        "rst♯ ∘ lst",
        "lst♯ ∘ rst",
    )
    return run_law(law, bounds, workers=workers)


def check_product_coherence(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """Pairing commutes with Kleisli composition when products are built with Γ.

    comp1(a) = Γ(f'♯(f a), g'♯(g a)) and comp2(a) = (Γ ∘ (f'×g'))♯(Γ(f a, g a)).
    """
    if gamma.order != 2:
        raise UsageError(
            f"product coherence needs an order-2 strength, {gamma.name} has order {gamma.order}"
        )
    if len(universes) != 3:
        raise UsageError(
            f"arity mismatch: product coherence uses universes A, B, C, got {len(universes)}"
        )
    m = gamma.monad
    A, B, C = (as_space(u) for u in universes)
    MB, MC = m.carrier(B, bounds), m.carrier(C, bounds)
    law = Law(
        LawId.PRODUCT_COHERENCE,
        gamma.describe(),
        ("f", "g", "f'", "g'", "a"),
        (
            _functions(A, MB, bounds),
            _functions(A, MC, bounds),
            _functions(B, MB, bounds),
            _functions(C, MC, bounds),
            A,
        ),
        lambda f, g, f2, g2, a: gamma.apply(
            (m.bind(f.table.apply(a), f2.table), m.bind(g.table.apply(a), g2.table))
        ),
        lambda f, g, f2, g2, a: m.bind_fn(
            gamma.apply((f.table.apply(a), g.table.apply(a))),
            lambda p: gamma.apply((f2.table.apply(p.fst), g2.table.apply(p.snd))),
        ),
        "Γ ∘ ⟨f'♯∘f, g'♯∘g⟩",
        "(Γ ∘ (f'×g'))♯ ∘ Γ ∘ ⟨f, g⟩",
    )
    return run_law(law, bounds, workers=workers)


def check_distributive_law(
    H: Monad,
    K: Monad,
    lam: Callable[[Val], Val],
    A: Space | Sequence[Val],
    bounds: Bounds,
    *,
    subject: str | None = None,
    workers: int = 1,
) -> list[LawReport]:
    """Naturality of λ : HK -> KH and the four distributive-law equations.

    Quantifiers over HK A, HKK A and HHK A run under ``bounds.nested()``.
    """
    A = as_space(A)
    subject = subject or f"λ: {H.name}{K.name} -> {K.name}{H.name}"
    stacked = bounds.nested()
    HA = H.carrier(A, bounds)
    KA = K.carrier(A, bounds)
    HKA = H.carrier(K.carrier(A, stacked), stacked)
    HKKA = H.carrier(K.carrier(K.carrier(A, stacked), stacked), stacked)
    HHKA = H.carrier(HKA, stacked)
    plain = _functions(A, A, bounds)
    laws = [
        (Law(
            LawId.DL_NATURALITY, subject, ("x", "f"), (HKA, plain),
            lambda x, f: lam(H.fmap_fn(lambda k: K.fmap(f.table, k), x)),
            lambda x, f: K.fmap_fn(lambda h: H.fmap(f.table, h), lam(x)),
            "λ ∘ HKf", "KHf ∘ λ",
        ), stacked),
        (Law(
            LawId.DL_A, subject, ("x",), (HA,),
            lambda x: lam(H.fmap_fn(K.unit, x)),
            lambda x: K.unit(x),
            "λ ∘ Hρ", "ρH",
        ), bounds),
        (Law(
            LawId.DL_B, subject, ("x",), (HKKA,),
            lambda x: lam(H.fmap_fn(K.join, x)),
            lambda x: K.join(K.fmap_fn(lam, lam(x))),
            "λ ∘ Hν", "νH ∘ Kλ ∘ λK",
        ), stacked),
        (Law(
            LawId.DL_C, subject, ("x",), (KA,),
            lambda x: lam(H.unit(x)),
            lambda x: K.fmap_fn(H.unit, x),
            "λ ∘ ηK", "Kη",
        ), bounds),
        (Law(
            LawId.DL_D, subject, ("x",), (HHKA,),
            lambda x: lam(H.join(x)),
            lambda x: K.fmap_fn(H.join, lam(H.fmap_fn(lam, x))),
            "λ ∘ μK", "Kμ ∘ λH ∘ Hλ",
        ), stacked),
    ]  # fmt: skip
    return [run_law(law, budget, workers=workers) for law, budget in laws]


def check_composite_bind(
    m: Monad, A: Space | Sequence[Val], bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """Bind in KH computed as join after fmap agrees with bind through λ."""
    bind_both = getattr(m, "bind_both", None)
    if bind_both is None:
        raise UsageError(f"{m.name} is not a composite monad")
    bounds = bounds.nested()
    A = as_space(A)
    MA = m.carrier(A, bounds)
    law = Law(
        LawId.COMPOSITE_BIND,
        m.describe(),
        ("v", "f"),
        (MA, _functions(A, MA, bounds)),
        lambda v, f: bind_both(v, f.table.apply)[0],
        lambda v, f: bind_both(v, f.table.apply)[1],
        "μ ∘ KHf",
        "ν ∘ K(Kμ ∘ λ ∘ Hf)",
    )
    return run_law(law, bounds, workers=workers)


def check_map_lift(
    K: Monad, A: Space | Sequence[Val], bounds: Bounds, *, workers: int = 1
) -> LawReport:
    """Mapping a Kleisli arrow over a list and sequencing preserves Kleisli composition."""
    A = as_space(A)
    KA = K.carrier(A, bounds)
    arrows = _functions(A, KA, bounds)
    lists = ListMonad("list").carrier(A, bounds)

    def lifted(f: FnTable, xs: Val) -> Val:
        return sequence_values(K, [f.apply(x) for x in xs.items])

    law = Law(
        LawId.MAP_LIFT_FUNCTORIAL,
        K.describe(),
        ("xs", "f", "g"),
        (lists, arrows, arrows),
        lambda xs, f, g: lifted(K.kleisli_compose(f.table, g.table), xs),
        lambda xs, f, g: K.bind_fn(lifted(f.table, xs), lambda ys: lifted(g.table, ys)),
        "sequence ∘ map(g♯ ∘ f)",
        "(sequence ∘ map g)♯ ∘ sequence ∘ map f",
    )
    return run_law(law, bounds, workers=workers)


def check_reconstruct(
    gamma: StrengthSpec, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> list[LawReport]:
    """Both one-sided reconstructions of Γ agree with Γ."""
    if gamma.order != 2 or len(universes) != 2:
        raise UsageError("reconstruction needs an order-2 strength and two universes")
    m = gamma.monad
    spaces = tuple(m.carrier(as_space(u), bounds) for u in universes)
    laws = [
        Law(
            LawId.RECONSTRUCT, f"{gamma.describe()} via lΓ", ("ma", "mb"), spaces,
            lambda ma, mb: reconstruct_gamma(gamma, ma, mb)[0],
            lambda ma, mb: gamma.apply((ma, mb)),
            "(rΓ)♯ ∘ lΓ_{A,KB}", "Γ",
        ),
        Law(
            LawId.RECONSTRUCT, f"{gamma.describe()} via rΓ", ("ma", "mb"), spaces,
            lambda ma, mb: reconstruct_gamma(gamma, ma, mb)[1],
            lambda ma, mb: gamma.apply((ma, mb)),
            "(lΓ)♯ ∘ rΓ_{KA,B}", "Γ",
        ),
    ]  # fmt: skip
    return _run_all(laws, bounds, workers)


@dataclass(frozen=True)
class AuditResult:
    commutative: LawReport
    left: list[LawReport]
    right: list[LawReport]
    verdict: LawReport

    @property
    def reports(self) -> list[LawReport]:
        return [self.commutative, *self.left, *self.right, self.verdict]


def _holds(reports: Sequence[LawReport]) -> bool:
    return all(report.status != Status.FAIL for report in reports)


def equivalence_audit(
    m: Monad, universes: Sequence, bounds: Bounds, *, workers: int = 1
) -> AuditResult:
    """Commutativity holds exactly when lstΓ, and likewise rstΓ, is a Kleisli strength."""
    A, B = universes[0], universes[1]
    commutative = check_commutative(m, A, B, bounds, workers=workers)
    left = check_kleisli_strength(derived_strength(m, "left"), [A, B], bounds, workers=workers)
    right = check_kleisli_strength(derived_strength(m, "right"), [A, B], bounds, workers=workers)
    is_commutative = commutative.status != Status.FAIL
    sides = {"lstΓ": _holds(left), "rstΓ": _holds(right)}
    agree = all(ok == is_commutative for ok in sides.values())
    cases = commutative.cases_checked + sum(r.cases_checked for r in left + right)
    mode = (
        Mode.SAMPLED
        if any(r.mode == Mode.SAMPLED for r in [commutative, *left, *right])
        else Mode.EXHAUSTIVE
    )
    witness = None
    if not agree:
        odd = next(side for side, ok in sides.items() if ok != is_commutative)
        witness = Counterexample(
            (("commutative", Atom(commutative.status.value.lower())),),
            Atom("pass" if is_commutative else "fail"),
            Atom("pass" if sides[odd] else "fail"),
            "commutative",
            f"{odd} Kleisli",
        )
    verdict = LawReport(
        LawId.EQUIVALENCE,
        m.describe(),
        Status.PASS if agree else Status.FAIL,
        cases,
        mode,
        bounds,
        witness,
        elapsed=commutative.elapsed + sum(r.elapsed for r in left + right),
    )
    return AuditResult(commutative, left, right, verdict)

