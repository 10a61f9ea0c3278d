"""Picard-Lefschetz operators, equivariant reflection generators, and the
finiteness decision procedure with machine-checkable certificates.

Group closure is a breadth-first product enumeration with exact matrix
deduplication.  The decision procedure is keyed to the inertia of the
restricted form:

  (a) negative definite      -> BFS closure is provably finite.
  (b) negative semidefinite  -> every element fixes the kernel pointwise
      and induces an isometry of the definite quotient; two elements
      sharing a quotient action differ by a nontrivial unipotent, which
      certifies infinite order.  Always terminates: the quotient group is
      finite, so either the closure completes or a collision occurs.
  (c) anything else          -> BFS with an exact element-order test
      (cyclotomic factorization of the characteristic polynomial plus a
      direct power check); may return Unknown at the element cap.

The int64 fast path is guarded: products are only computed in machine
integers when the dimension and current entry bounds prove no overflow;
otherwise the same BFS runs on arbitrary-precision objects.
"""
import itertools
from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional

import numpy as np

from . import linalg
from .action import character_projection, orbit_decomposition, isotypic_sublattice
from .errors import (
    IsotropicCycleError,
    NonIntegralReflectionError,
    OrbitNotOrthogonalError,
    ProjectsToZeroError,
)
from .lattice import IntLattice, Sublattice, inertia, kernel_basis


_INT64_SAFE = 2**62


def _gram_of(lattice_or_sub):
    if isinstance(lattice_or_sub, Sublattice):
        return lattice_or_sub.restricted_gram
    if isinstance(lattice_or_sub, IntLattice):
        return lattice_or_sub.gram
    return linalg.freeze(lattice_or_sub)


@dataclass(frozen=True)
class MonodromyElement:
    """Integer matrix preserving a fixed symmetric form, with its word label."""

    matrix: tuple
    gram: tuple
    word: tuple = ()

    def __post_init__(self):
        M = linalg.freeze(self.matrix)
        G = linalg.freeze(self.gram)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "gram", G)
        object.__setattr__(self, "word", tuple(self.word))
        MGM = linalg.mat_mul(linalg.mat_mul(linalg.transpose(M), G), M)
        if MGM != G:
            raise ValueError("matrix does not preserve the bilinear form")

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def is_identity(self):
        return self.matrix == linalg.identity(self.rank)

    @property
    def is_involution(self):
        return linalg.mat_mul(self.matrix, self.matrix) == linalg.identity(self.rank)

    def __matmul__(self, other):
        if self.gram != other.gram:
            raise ValueError("elements live on different forms")
        return MonodromyElement(
            matrix=linalg.mat_mul(self.matrix, other.matrix),
            gram=self.gram,
            word=self.word + other.word,
        )

    def apply(self, v):
        return linalg.mat_vec(self.matrix, v)

    def inverse(self):
        inv = linalg.inverse_rational(self.matrix)
        mat = []
        for row in inv:
            if any(x.denominator != 1 for x in row):
                raise ValueError("element is not invertible over the integers")
            mat.append(tuple(int(x) for x in row))
        word = tuple(f"{w}^-1" for w in reversed(self.word))
        return MonodromyElement(matrix=tuple(mat), gram=self.gram, word=word)

    @classmethod
    def identity_on(cls, gram):
        return cls(matrix=linalg.identity(len(gram)), gram=linalg.freeze(gram))


def pl_reflection(lattice_or_sub, delta, name=None):
    """The Picard-Lefschetz reflection in the cycle `delta`.

    a |-> a - 2 (a, delta)/(delta, delta) * delta.  For self-intersection
    -2 this is a |-> a + (a, delta) delta.  Raises IsotropicCycleError when
    (delta, delta) = 0 and NonIntegralReflectionError when the map does
    not preserve the integer lattice.
    """
    G = _gram_of(lattice_or_sub)
    n = len(G)
    delta = tuple(delta)
    Gd = linalg.mat_vec(G, delta)
    dd = sum(a * b for a, b in zip(delta, Gd))
    if dd == 0:
        raise IsotropicCycleError(f"cycle {delta} has self-intersection zero")
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            num = -2 * Gd[j] * delta[i]
            if num % dd != 0:
                raise NonIntegralReflectionError(
                    f"reflection in {delta} is not integral: "
                    f"2(e_{j + 1}, delta) delta is not divisible by ({dd})"
                )
            row.append((1 if i == j else 0) + num // dd)
        rows.append(tuple(row))
    word = (name,) if name is not None else ()
    return MonodromyElement(matrix=tuple(rows), gram=G, word=word)


def restrict_operator(sub, ambient_matrix):
    """Express an ambient operator in sublattice coordinates.

    The operator must map the sublattice into itself with integer
    coordinates; otherwise ValueError.
    """
    cols = linalg.transpose(sub.basis)
    out_cols = []
    for b in sub.basis:
        img = linalg.mat_vec(ambient_matrix, b)
        coord = linalg.solve_integer(cols, img)
        if coord is None:
            raise ValueError("operator does not preserve the sublattice")
        out_cols.append(coord)
    return linalg.transpose(linalg.freeze(out_cols))


def orbit_cycle(action, chi, orbit):
    """Primitive chi-projection of the orbit's least cycle, ambient coords."""
    n = action.lattice.rank
    rep = tuple(1 if i == min(orbit) else 0 for i in range(n))
    proj = character_projection(action, chi, rep)
    if all(x == 0 for x in proj):
        raise ProjectsToZeroError(
            f"orbit {tuple(i + 1 for i in orbit)} projects to zero under the character"
        )
    den = 1
    for x in proj:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = tuple(int(x * den) for x in proj)
    return linalg.primitive(ints)


def orbit_generator(action, chi, orbit, sub=None, name=None):
    """Equivariant monodromy generator attached to one orbit of cycles.

    Product of the ambient Picard-Lefschetz reflections over the orbit
    (pairwise-orthogonal cycles, so the order is immaterial), restricted
    to the chi-isotypic sublattice.  Asserts the result coincides with the
    reflection in the primitive character projection of the orbit cycle.
    """
    G = action.lattice.gram
    orbit = tuple(sorted(orbit))
    for i, j in itertools.combinations(orbit, 2):
        if G[i][j] != 0:
            raise OrbitNotOrthogonalError(
                f"cycles {i + 1} and {j + 1} in one orbit have product {G[i][j]} != 0"
            )
    if sub is None:
        sub = isotypic_sublattice(action, chi)
    n = action.lattice.rank
    amb = linalg.identity(n)
    for i in orbit:
        H = pl_reflection(action.lattice, action.lattice.basis_vector(i)).matrix
        amb = linalg.mat_mul(H, amb)
    restricted = restrict_operator(sub, amb)
    delta_amb = orbit_cycle(action, chi, orbit)
    delta_sub = sub.coordinates(delta_amb)
    if delta_sub is None:
        raise ProjectsToZeroError(
            "orbit cycle projection does not lie in the isotypic sublattice"
        )
    refl = pl_reflection(sub, delta_sub, name=name)
    if refl.matrix != restricted:
        raise AssertionError(
            "restricted orbit product disagrees with the reflection in the "
            "projected cycle; action data is inconsistent"
        )
    return MonodromyElement(matrix=restricted, gram=sub.restricted_gram, word=refl.word)


def equivariant_generators(action, chi):
    """(sublattice, [h_1, ..., h_r]) for the pipeline: one reflection per orbit."""
    sub = isotypic_sublattice(action, chi)
    gens = []
    for k, orbit in enumerate(orbit_decomposition(action), start=1):
        gens.append(orbit_generator(action, chi, orbit, sub=sub, name=f"h{k}"))
    return sub, gens


# --------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Finite:
    order: int

    kind = "finite"

    def __str__(self):
        return f"Finite(order={self.order})"


@dataclass(frozen=True)
class Infinite:
    """Self-validating witness of infinite order.

    certificate: group element g with g != I and (g - I)^2 = 0 (unipotent
    case; always produced on the semidefinite path).  witness v and
    increment w satisfy w = (g - I)v != 0 and (g - I)w = 0, which forces
    g^s v = v + s w for every s >= 1.  `residual_charpoly` is set instead
    of a power law only on the indefinite path when an eigenvalue off the
    roots of unity is detected.
    """

    certificate: MonodromyElement
    witness: Optional[tuple] = None
    increment: Optional[tuple] = None
    residual_charpoly: Optional[tuple] = None

    kind = "infinite"

    def validate(self):
        """Re-verify the certificate independently of the search that found it.

        The witness law alone (w = (g-I)v != 0, (g-I)w = 0) proves infinite
        order: by induction g^s v = v + s w != v.  On a negative
        semidefinite form the stronger unipotent shape (g-I)^2 = 0 and the
        kernel membership of w are also required; that is what the
        semidefinite search path always produces.
        """
        g = self.certificate
        if g.is_identity:
            raise AssertionError("certificate element is the identity")
        if self.residual_charpoly is not None:
            _orders, residual = linalg.strip_cyclotomic_factors(
                linalg.charpoly(g.matrix), g.rank
            )
            if len(residual) <= 1:
                raise AssertionError("residual charpoly certificate does not hold")
            return True
        I = linalg.identity(g.rank)
        U = linalg.freeze(
            tuple(a - b for a, b in zip(row, irow))
            for row, irow in zip(g.matrix, I)
        )
        v, w = self.witness, self.increment
        if v is None or w is None:
            raise AssertionError("unipotent certificate lacks witness data")
        if linalg.mat_vec(U, v) != tuple(w):
            raise AssertionError("increment is not (g - I) v")
        if linalg.is_zero_vec(w):
            raise AssertionError("increment vector is zero")
        if not linalg.is_zero_vec(linalg.mat_vec(U, w)):
            raise AssertionError("increment is not fixed by g")
        if power_law_check(self.certificate, v, w, 5) is not None:
            raise AssertionError("power law fails on the certificate")
        if inertia(IntLattice(g.gram)).negative_semidefinite:
            UU = linalg.mat_mul(U, U)
            if any(any(x != 0 for x in row) for row in UU):
                raise AssertionError("(g - I)^2 != 0: certificate is not unipotent")
            if not linalg.is_zero_vec(linalg.mat_vec(g.gram, w)):
                raise AssertionError("increment does not lie in the form kernel")
        return True

    def __str__(self):
        return f"Infinite(word={'*'.join(self.certificate.word) or '?'})"


@dataclass(frozen=True)
class Unknown:
    cap: int

    kind = "unknown"

    def __str__(self):
        return f"Unknown(cap={self.cap})"


def power_law_check(g, v, w, s_max):
    """Verify g^s v == v + s*w exactly for s = 1..s_max.

    Returns None when the law holds, else the first failing s.
    """
    M = g.matrix if isinstance(g, MonodromyElement) else linalg.freeze(g)
    cur = tuple(v)
    for s in range(1, s_max + 1):
        cur = linalg.mat_vec(M, cur)
        expect = tuple(a + s * b for a, b in zip(v, w))
        if cur != expect:
            return s
    return None


# --------------------------------------------------------------------------
# BFS closure machinery


def _np_matrices(mats, force_object=False):
    """Pick int64 when provably overflow-safe for one BFS step, else objects."""
    n = len(mats[0])
    maxabs = max(abs(int(x)) for M in mats for row in M for x in row)
    if not force_object and n * (maxabs + 1) ** 2 < _INT64_SAFE:
        dtype = np.int64
    else:
        dtype = object
    return [np.array(M, dtype=dtype) for M in mats], dtype


def _key(arr):
    if arr.dtype == object:
        return tuple(arr.flat)
    return arr.tobytes()


class _OverflowRisk(Exception):
    pass


def _bfs(gen_arrays, n, dtype, on_new, cap=None):
    """Breadth-first closure under right multiplication by the generators.

    Deterministic: elements are visited in word-length order, with
    generator index as the tie-break.  `on_new(arr, word)` may raise
    _StopSearch to end early.  Overflow safety is re-checked per level in
    int64 mode.
    """
    I = np.eye(n, dtype=dtype)
    visited = {_key(I)}
    on_new(I, ())
    frontier = [(I, ())]
    count = 1
    gen_max = max(int(abs(x)) for g in gen_arrays for x in g.flat)
    while frontier:
        if dtype == np.int64:
            cur_max = max(int(abs(x)) for m, _ in frontier for x in m.flat)
            if n * cur_max * gen_max >= _INT64_SAFE:
                raise _OverflowRisk()
        new = []
        for m, word in frontier:
            for gi, g in enumerate(gen_arrays):
                p = m.dot(g)  # .dot supports object dtype; @ does not
                k = _key(p)
                if k in visited:
                    continue
                visited.add(k)
                count += 1
                if cap is not None and count > cap:
                    return None
                w = word + (gi,)
                on_new(p, w)
                new.append((p, w))
        frontier = new
    return count


class _StopSearch(Exception):
    def __init__(self, payload):
        self.payload = payload


def _tuple_matrix(arr):
    return linalg.freeze(tuple(int(x) for x in row) for row in arr)


def _quotient_setup(gram):
    """Unimodular P whose first k columns span the form kernel.

    Elements fixing the kernel pointwise satisfy P^-1 M P = [[I, B], [0, Q]];
    Q is the induced action on the definite quotient.
    """
    ker_rows = linalg.int_kernel(gram)
    k = len(ker_rows)
    n = len(gram)
    A = linalg.transpose(ker_rows)  # n x k, columns span the kernel
    H, U = linalg.hnf_with_transform(A)
    top = [row for row in H[:k]]
    det = 1
    for i in range(k):
        det *= top[i][i]
    assert abs(det) == 1, "kernel basis is not saturated"
    assert all(linalg.is_zero_vec(r) for r in H[k:])
    P = linalg.inverse_unimodular(U)
    Pinv = U
    return k, P, Pinv


def _quotient_action(Pinv, P, M, k):
    n = len(P)
    T = linalg.mat_mul(linalg.mat_mul(Pinv, M), P)
    for i in range(k):
        for j in range(k):
            if T[i][j] != (1 if i == j else 0):
                raise ValueError("element does not fix the kernel pointwise")
    for i in range(k, n):
        for j in range(k):
            if T[i][j] != 0:
                raise ValueError("element does not preserve the kernel splitting")
    return linalg.freeze(row[k:] for row in T[k:])


def generate_group(generators, cap=10**6):
    """Decide finiteness of the group generated by `generators`.

    Returns Finite(order), Infinite(certificate...), or Unknown(cap); the
    Infinite certificate is re-validated before being returned.  Cases (a)
    and (b) of the decision procedure ignore the cap (they provably
    terminate); only the indefinite case (c) can return Unknown.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    gram = generators[0].gram
    if any(g.gram != gram for g in generators):
        raise ValueError("generators preserve different forms")
    sig = inertia(IntLattice(gram))
    if sig.negative_definite:
        return _generate_definite(generators)
    if sig.negative_semidefinite:
        ker = linalg.int_kernel(gram)
        fixes = all(
            linalg.mat_vec(g.matrix, kv) == tuple(kv)
            for g in generators
            for kv in ker
        )
        if fixes:
            return _generate_semidefinite(generators)
    return _generate_general(generators, cap)


def _generate_definite(generators):
    n = generators[0].rank

    def run(force_object):
        arrays, dtype = _np_matrices([g.matrix for g in generators], force_object)
        return _bfs(arrays, n, dtype, lambda arr, word: None)

    try:
        order = run(False)
    except _OverflowRisk:
        order = run(True)
    return Finite(order=order)


def _generate_semidefinite(generators):
    gram = generators[0].gram
    n = generators[0].rank
    k, P, Pinv = _quotient_setup(gram)
    all_involutions = all(g.is_involution for g in generators)

    def run(force_object):
        arrays, dtype = _np_matrices([g.matrix for g in generators], force_object)
        quots = {}

        def on_new(arr, word):
            M = _tuple_matrix(arr)
            q = _quotient_action(Pinv, P, M, k)
            prev = quots.get(q)
            if prev is not None:
                raise _StopSearch((M, word, prev[0], prev[1]))
            quots[q] = (M, word)

        try:
            order = _bfs(arrays, n, dtype, on_new)
            return Finite(order=order)
        except _StopSearch as stop:
            return _unipotent_certificate(generators, gram, *stop.payload,
                                          all_involutions=all_involutions)

    try:
        return run(False)
    except _OverflowRisk:
        return run(True)


def _word_names(generators, word):
    return tuple(generators[i].word[0] if len(generators[i].word) == 1
                 else f"g{i + 1}" for i in word)


def _unipotent_certificate(generators, gram, m_new, w_new, m_prev, w_prev,
                           all_involutions):
    """Certificate g = m_new * m_prev^-1 from a quotient-action collision."""
    prev = MonodromyElement(matrix=m_prev, gram=gram)
    inv = prev.inverse()
    cert_matrix = linalg.mat_mul(m_new, inv.matrix)
    if all_involutions:
        inv_names = tuple(reversed(_word_names(generators, w_prev)))
    else:
        inv_names = tuple(f"{x}^-1" for x in reversed(_word_names(generators, w_prev)))
    word = _word_names(generators, w_new) + inv_names
    element = MonodromyElement(matrix=cert_matrix, gram=gram, word=word)
    v, w = _unipotent_witness(cert_matrix)
    verdict = Infinite(certificate=element, witness=v, increment=w)
    verdict.validate()
    return verdict


def _unipotent_witness(matrix):
    """First basis vector moved by g, with its kernel increment."""
    n = len(matrix)
    for j in range(n):
        col = tuple(matrix[i][j] - (1 if i == j else 0) for i in range(n))
        if not linalg.is_zero_vec(col):
            v = tuple(1 if t == j else 0 for t in range(n))
            return v, col
    raise AssertionError("certificate element is the identity")


def _finite_order(matrix):
    """Exact finite-order test for an integer matrix.

    Factor the characteristic polynomial into cyclotomics; a nonconstant
    residual certifies infinite order outright.  Otherwise the candidate
    order N = lcm of the cyclotomic orders is checked by direct powering:
    M has finite order iff M^N = I.
    """
    n = len(matrix)
    poly = linalg.charpoly(matrix)
    orders, residual = linalg.strip_cyclotomic_factors(poly, n)
    if len(residual) > 1:
        return False, residual, None
    N = lcm(*orders) if orders else 1
    # square-and-multiply
    result = linalg.identity(n)
    base = matrix
    e = N
    while e:
        if e & 1:
            result = linalg.mat_mul(result, base)
        e >>= 1
        if e:
            base = linalg.mat_mul(base, base)
    return result == linalg.identity(n), None, N


def _generate_general(generators, cap):
    gram = generators[0].gram
    n = generators[0].rank

    def run(force_object):
        arrays, dtype = _np_matrices([g.matrix for g in generators], force_object)

        def on_new(arr, word):
            M = _tuple_matrix(arr)
            finite, residual, N = _finite_order(M)
            if finite:
                return
            element = MonodromyElement(
                matrix=M, gram=gram, word=_word_names(generators, word)
            )
            if residual is not None:
                raise _StopSearch(
                    Infinite(certificate=element, residual_charpoly=residual)
                )
            # all eigenvalues are roots of unity but M^N != I: M^N is a
            # nontrivial unipotent with an explicit power-law witness
            h = element
            power = MonodromyElement.identity_on(gram)
            for _ in range(N):
                power = power @ h
            v, w = _index2_witness(power.matrix)
            raise _StopSearch(Infinite(certificate=power, witness=v, increment=w))

        try:
            order = _bfs(arrays, n, dtype, on_new, cap=cap)
        except _StopSearch as stop:
            verdict = stop.payload
            verdict.validate()
            return verdict
        if order is None:
            return Unknown(cap=cap)
        return Finite(order=order)

    try:
        return run(False)
    except _OverflowRisk:
        return run(True)


def _index2_witness(matrix):
    """Vector v with (g-I)v != 0 and (g-I)^2 v = 0, for unipotent g."""
    n = len(matrix)
    U = linalg.freeze(
        tuple(matrix[i][j] - (1 if i == j else 0) for j in range(n))
        for i in range(n)
    )
    U2 = linalg.mat_mul(U, U)
    for cand in linalg.int_kernel(U2):
        img = linalg.mat_vec(U, cand)
        if not linalg.is_zero_vec(img):
            return tuple(cand), img
    raise AssertionError("no index-2 witness: element is not a nontrivial unipotent")


def closure_naive(generators, limit=100000):
    """Order by repeated pairwise products until stable (test oracle).

    Deliberately a different traversal than the BFS so the two orders can
    be cross-checked on small groups.
    """
    mats = {linalg.identity(generators[0].rank)}
    mats.update(g.matrix for g in generators)
    while True:
        new = set()
        for a in mats:
            for b in mats:
                p = linalg.mat_mul(a, b)
                if p not in mats:
                    new.add(p)
        if not new:
            return len(mats)
        mats |= new
        if len(mats) > limit:
            raise RuntimeError("naive closure limit exceeded")
