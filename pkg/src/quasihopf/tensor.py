"""Sparse exact tensors over fixed ordered bases, linear maps, and
structure-constant algebras.

A ``Tensor`` is a sparse element of a tensor product of finite
dimensional spaces ("legs").  A ``LinMap`` sends basis multi-indices to
tensors and can be applied to any subset of legs.  A ``FinAlgebra`` is a
unital algebra given by structure constants; lists of algebras (one per
leg) turn tensor powers into componentwise algebras, which is where all
of the displayed element identities of the domain live.

The ``El`` wrapper pairs a tensor with its per-leg spaces and provides
the small calculus (merge, map, outer product, permute) used to
transcribe multi-term Sweedler formulas leg by leg.
"""

from __future__ import annotations

from . import linalg
from .errors import NotInvertible, ShapeMismatch


def _check_same_field(a, b):
    if a.field != b.field:
        raise ShapeMismatch("mixed scalar fields %r and %r" % (a.field, b.field))


class Tensor:
    """Sparse element of a tensor power; no zero entries are stored."""

    __slots__ = ("field", "dims", "data")

    def __init__(self, field, dims, data=None):
        dims = tuple(dims)
        for d in dims:
            if d <= 0:
                raise ShapeMismatch("zero-dimensional leg rejected")
        self.field = field
        self.dims = dims
        self.data = {}
        if data:
            for idx, value in data.items():
                if value:
                    self._check_index(idx)
                    self.data[tuple(idx)] = value

    def _check_index(self, idx):
        if len(idx) != len(self.dims):
            raise ShapeMismatch("index %r has wrong arity for dims %r" % (idx, self.dims))
        for i, d in zip(idx, self.dims):
            if not 0 <= i < d:
                raise ShapeMismatch("index %r out of range for dims %r" % (idx, self.dims))

    @classmethod
    def zero(cls, field, dims):
        return cls(field, dims)

    @classmethod
    def basis(cls, field, dims, idx):
        return cls(field, dims, {tuple(idx): field.one})

    @classmethod
    def scalar(cls, field, value):
        return cls(field, (), {(): value} if value else {})

    @property
    def arity(self) -> int:
        return len(self.dims)

    def get(self, idx):
        return self.data.get(tuple(idx), self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.field == other.field and self.dims == other.dims and self.data == other.data

    def __hash__(self):
        return hash((self.dims, frozenset(self.data.items())))

    def is_zero(self) -> bool:
        return not self.data

    def __add__(self, other):
        _check_same_field(self, other)
        if self.dims != other.dims:
            raise ShapeMismatch("dims %r vs %r" % (self.dims, other.dims))
        data = dict(self.data)
        for idx, value in other.data.items():
            s = data.get(idx, self.field.zero) + value
            if s:
                data[idx] = s
            else:
                data.pop(idx, None)
        out = Tensor(self.field, self.dims)
        out.data = data
        return out

    def __neg__(self):
        out = Tensor(self.field, self.dims)
        out.data = {idx: -value for idx, value in self.data.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        out = Tensor(self.field, self.dims)
        if value:
            out.data = {idx: v * value for idx, v in self.data.items()}
        return out

    def outer(self, other):
        _check_same_field(self, other)
        out = Tensor(self.field, self.dims + other.dims)
        for i1, v1 in self.data.items():
            for i2, v2 in other.data.items():
                out.data[i1 + i2] = v1 * v2
        return out

    def entries(self):
        """Entries sorted by multi-index (deterministic reports)."""
        return sorted(self.data.items())

    def first_difference(self, other):
        """Smallest multi-index where the two tensors differ, or None."""
        keys = sorted(set(self.data) | set(other.data))
        for idx in keys:
            if self.data.get(idx, self.field.zero) != other.data.get(idx, self.field.zero):
                return idx
        return None

    def to_flat(self):
        """Dense flat vector in row-major multi-index order."""
        strides = _strides(self.dims)
        total = 1
        for d in self.dims:
            total *= d
        vec = [self.field.zero] * total
        for idx, value in self.data.items():
            vec[_flatten(idx, strides)] = value
        return vec

    @classmethod
    def from_flat(cls, field, dims, vec):
        dims = tuple(dims)
        out = cls(field, dims)
        for flat, value in enumerate(vec):
            if value:
                out.data[_unflatten(flat, dims)] = value
        return out

    def fuse(self, groups):
        """Regroup legs: each group of legs becomes one leg, row-major.

        ``groups`` lists every leg exactly once, e.g. [[0], [1, 2]].
        """
        seen = [l for grp in groups for l in grp]
        if sorted(seen) != list(range(self.arity)):
            raise ShapeMismatch("fuse groups %r must cover all legs" % (groups,))
        new_dims = []
        for grp in groups:
            d = 1
            for l in grp:
                d *= self.dims[l]
            new_dims.append(d)
        out = Tensor(self.field, tuple(new_dims))
        for idx, value in self.data.items():
            new_idx = []
            for grp in groups:
                flat = 0
                for l in grp:
                    flat = flat * self.dims[l] + idx[l]
                new_idx.append(flat)
            out.data[tuple(new_idx)] = value
        return out

    def split(self, leg, dims):
        """Split one leg into several, inverse of ``fuse`` on that leg."""
        total = 1
        for d in dims:
            total *= d
        if total != self.dims[leg]:
            raise ShapeMismatch("cannot split leg of dim %d into %r" % (self.dims[leg], dims))
        out_dims = self.dims[:leg] + tuple(dims) + self.dims[leg + 1:]
        out = Tensor(self.field, out_dims)
        for idx, value in self.data.items():
            out.data[idx[:leg] + _unflatten(idx[leg], dims) + idx[leg + 1:]] = value
        return out

    def __repr__(self):
        items = ", ".join("%r: %s" % (idx, v) for idx, v in self.entries())
        return "Tensor(dims=%r, {%s})" % (self.dims, items)


def _strides(dims):
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return strides


def _flatten(idx, strides):
    flat = 0
    for i, s in zip(idx, strides):
        flat += i * s
    return flat


def _unflatten(flat, dims):
    idx = [0] * len(dims)
    for i in range(len(dims) - 1, -1, -1):
        idx[i] = flat % dims[i]
        flat //= dims[i]
    return tuple(idx)


def switch_legs(x: Tensor, perm) -> Tensor:
    """Re-index legs: new leg i is old leg perm[i].

    The common superscript notation "reversed legs" for a 3-tensor is
    ``switch_legs(x, (2, 1, 0))``: the entry at (i, j, k) moves to (k, j, i).
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(x.arity)):
        raise ShapeMismatch("bad permutation %r for arity %d" % (perm, x.arity))
    out = Tensor(x.field, tuple(x.dims[p] for p in perm))
    for idx, value in x.data.items():
        out.data[tuple(idx[p] for p in perm)] = value
    return out


class LinMap:
    """Linear map between tensor powers, stored column-sparsely.

    ``cols[src_index]`` is the sparse image of the source basis vector.
    ``dst_spaces`` optionally records the per-leg spaces of the target so
    expression pipelines can track spaces through coproducts and actions.
    """

    __slots__ = ("field", "src", "dst", "cols", "dst_spaces")

    def __init__(self, field, src, dst, cols=None, dst_spaces=None):
        self.field = field
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.cols = {}
        if cols:
            for idx, img in cols.items():
                clean = {tuple(j): v for j, v in img.items() if v}
                if clean:
                    self.cols[tuple(idx)] = clean
        self.dst_spaces = tuple(dst_spaces) if dst_spaces is not None else None

    @classmethod
    def from_function(cls, field, src, dst, fn, dst_spaces=None):
        cols = {}
        for idx in _all_indices(src):
            img = fn(idx)
            if isinstance(img, Tensor):
                img = img.data
            cols[idx] = img
        return cls(field, src, dst, cols, dst_spaces)

    @classmethod
    def identity(cls, field, dims, spaces=None):
        return cls(field, dims, dims, {idx: {idx: field.one} for idx in _all_indices(dims)},
                   dst_spaces=spaces)

    def rebind(self, dst_spaces) -> "LinMap":
        """Copy with fresh target-space metadata; structure constructors
        use this so shared maps are never mutated across structures."""
        return LinMap(self.field, self.src, self.dst, self.cols, dst_spaces)

    def __call__(self, x: Tensor) -> Tensor:
        return apply_linear_map(self, x, tuple(range(x.arity)))

    def column(self, idx) -> Tensor:
        out = Tensor(self.field, self.dst)
        out.data = dict(self.cols.get(tuple(idx), {}))
        return out

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other."""
        if other.dst != self.src:
            raise ShapeMismatch("compose mismatch %r vs %r" % (other.dst, self.src))
        cols = {}
        for idx, img in other.cols.items():
            acc = {}
            for mid, v in img.items():
                for out_idx, w in self.cols.get(mid, {}).items():
                    s = acc.get(out_idx, self.field.zero) + v * w
                    if s:
                        acc[out_idx] = s
                    else:
                        acc.pop(out_idx, None)
            cols[idx] = acc
        return LinMap(self.field, other.src, self.dst, cols, self.dst_spaces)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.field == other.field and self.src == other.src
                and self.dst == other.dst and self.cols == other.cols)

    def __hash__(self):
        return hash((self.src, self.dst))

    def to_matrix(self):
        """Dense matrix, rows = flattened dst, cols = flattened src."""
        src_strides = _strides(self.src)
        dst_strides = _strides(self.dst)
        n_src = 1
        for d in self.src:
            n_src *= d
        n_dst = 1
        for d in self.dst:
            n_dst *= d
        m = linalg.zeros(self.field, n_dst, n_src)
        for idx, img in self.cols.items():
            c = _flatten(idx, src_strides)
            for out_idx, v in img.items():
                m[_flatten(out_idx, dst_strides)][c] = v
        return m

    @classmethod
    def from_matrix(cls, field, src, dst, matrix, dst_spaces=None):
        src, dst = tuple(src), tuple(dst)
        cols = {}
        for c, idx in enumerate(_all_indices(src)):
            img = {}
            for r, out_idx in enumerate(_all_indices(dst)):
                if matrix[r][c]:
                    img[out_idx] = matrix[r][c]
            cols[idx] = img
        return cls(field, src, dst, cols, dst_spaces)

    def is_invertible(self) -> bool:
        if self.src != self.dst and _size(self.src) != _size(self.dst):
            return False
        try:
            linalg.invert(self.field, self.to_matrix())
            return True
        except linalg.NotInvertible:
            return False

    def inverse(self) -> "LinMap":
        try:
            inv = linalg.invert(self.field, self.to_matrix())
        except linalg.NotInvertible as exc:
            raise NotInvertible(str(exc)) from exc
        return LinMap.from_matrix(self.field, self.dst, self.src, inv)

    def __repr__(self):
        return "LinMap(%r -> %r)" % (self.src, self.dst)


def _size(dims):
    n = 1
    for d in dims:
        n *= d
    return n


def _all_indices(dims):
    if not dims:
        return [()]
    out = [()]
    for d in dims:
        out = [idx + (i,) for idx in out for i in range(d)]
    return out


def all_indices(dims):
    return _all_indices(tuple(dims))


def apply_linear_map(m: LinMap, x: Tensor, legs, at=None) -> Tensor:
    """Apply ``m`` to the listed legs of ``x`` (in source-leg order).

    The target legs of ``m`` are inserted at slot ``at`` of the remaining
    legs; by default at the slot where the first listed leg sat.  The
    result is linear in ``x`` and functorial under composition.
    """
    legs = tuple(legs)
    if len(set(legs)) != len(legs):
        raise ShapeMismatch("repeated legs %r" % (legs,))
    for l in legs:
        if not 0 <= l < x.arity:
            raise ShapeMismatch("leg %d out of range" % l)
    src_dims = tuple(x.dims[l] for l in legs)
    if src_dims != m.src:
        raise ShapeMismatch("legs %r have dims %r but map wants %r" % (legs, src_dims, m.src))
    remaining = [l for l in range(x.arity) if l not in legs]
    if at is None:
        at = sum(1 for l in remaining if l < legs[0])
    if not 0 <= at <= len(remaining):
        raise ShapeMismatch("bad insertion slot %d" % at)
    out_dims = tuple(x.dims[l] for l in remaining[:at]) + m.dst \
        + tuple(x.dims[l] for l in remaining[at:])
    out = Tensor(x.field, out_dims)
    data = out.data
    for idx, value in x.data.items():
        col = m.cols.get(tuple(idx[l] for l in legs))
        if not col:
            continue
        head = tuple(idx[l] for l in remaining[:at])
        tail = tuple(idx[l] for l in remaining[at:])
        for img_idx, w in col.items():
            full = head + img_idx + tail
            s = data.get(full, x.field.zero) + value * w
            if s:
                data[full] = s
            else:
                data.pop(full, None)
    return out


class VectorSpace:
    """A plain finite-dimensional space used as a tensor leg."""

    __slots__ = ("field", "dim", "name")

    def __init__(self, field, dim: int, name: str = ""):
        if dim <= 0:
            raise ShapeMismatch("zero-dimensional space rejected")
        self.field = field
        self.dim = dim
        self.name = name

    def __repr__(self):
        return "VectorSpace(%d%s)" % (self.dim, ", %r" % self.name if self.name else "")


class FinAlgebra:
    """Unital algebra by structure constants over an ordered basis.

    ``mult`` is the multiplication as a LinMap (d, d) -> (d,); ``unit``
    is an arity-1 tensor.  Associativity and the two-sided unit law are
    checked at construction unless ``validate=False`` (module-algebra
    carriers are legitimately non-associative).
    """

    __slots__ = ("field", "dim", "mult", "unit", "name")

    def __init__(self, field, dim, mult: LinMap, unit: Tensor, name="", validate=True):
        if dim <= 0:
            raise ShapeMismatch("zero-dimensional algebra rejected")
        self.field = field
        self.dim = dim
        if mult.src != (dim, dim) or mult.dst != (dim,):
            raise ShapeMismatch("multiplication map has shape %r -> %r" % (mult.src, mult.dst))
        if unit.dims != (dim,):
            raise ShapeMismatch("unit has dims %r" % (unit.dims,))
        self.mult = mult.rebind((self,))
        self.unit = unit
        self.name = name
        if validate:
            witness = self.associativity_witness()
            if witness is not None:
                raise ShapeMismatch("structure constants not associative at %r" % (witness,))
            witness = self.unit_witness()
            if witness is not None:
                raise ShapeMismatch("unit law fails at basis %r" % (witness,))

    @classmethod
    def from_table(cls, field, dim, table, unit_vector, name="", validate=True):
        """``table[(i, j)]`` maps k -> coefficient of e_k in e_i e_j."""
        cols = {}
        for i in range(dim):
            for j in range(dim):
                img = table.get((i, j), {})
                cols[(i, j)] = {(k,): v for k, v in img.items() if v}
        mult = LinMap(field, (dim, dim), (dim,), cols)
        unit = Tensor(field, (dim,), {(i,): v for i, v in enumerate(unit_vector) if v})
        return cls(field, dim, mult, unit, name=name, validate=validate)

    def product(self, x: Tensor, y: Tensor) -> Tensor:
        return apply_linear_map(self.mult, x.outer(y), (0, 1))

    def basis_product(self, i: int, j: int) -> Tensor:
        return self.mult.column((i, j))

    def associativity_witness(self):
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.basis_product(i, j)
                for k in range(self.dim):
                    left = apply_linear_map(self.mult, ij.outer(Tensor.basis(self.field, (self.dim,), (k,))), (0, 1))
                    right = self.product(Tensor.basis(self.field, (self.dim,), (i,)),
                                         self.basis_product(j, k))
                    if left != right:
                        return (i, j, k)
        return None

    def unit_witness(self):
        for i in range(self.dim):
            e = Tensor.basis(self.field, (self.dim,), (i,))
            if self.product(self.unit, e) != e or self.product(e, self.unit) != e:
                return (i,)
        return None

    def opposite(self) -> "FinAlgebra":
        cols = {}
        for i in range(self.dim):
            for j in range(self.dim):
                cols[(i, j)] = dict(self.mult.cols.get((j, i), {}))
        mult = LinMap(self.field, (self.dim, self.dim), (self.dim,), cols)
        return FinAlgebra(self.field, self.dim, mult, self.unit,
                          name=self.name + "^op" if self.name else "", validate=False)

    def __repr__(self):
        return "FinAlgebra(dim=%d%s)" % (self.dim, ", %r" % self.name if self.name else "")


def build_tensor_algebra(a: FinAlgebra, b: FinAlgebra, name="") -> FinAlgebra:
    """Componentwise product algebra on A (x) B, basis (i, j) -> i*dimB + j."""
    _check_same_field(a, b)
    dim = a.dim * b.dim
    cols = {}
    for i1 in range(a.dim):
        for j1 in range(b.dim):
            for i2 in range(a.dim):
                for j2 in range(b.dim):
                    img = {}
                    for (k1,), v1 in a.mult.cols.get((i1, i2), {}).items():
                        for (k2,), v2 in b.mult.cols.get((j1, j2), {}).items():
                            img[(k1 * b.dim + k2,)] = v1 * v2
                    cols[(i1 * b.dim + j1, i2 * b.dim + j2)] = img
    mult = LinMap(a.field, (dim, dim), (dim,), cols)
    unit = a.unit.outer(b.unit).fuse([[0, 1]])
    return FinAlgebra(a.field, dim, mult, unit, name=name, validate=False)


def unit_tensor(spaces) -> Tensor:
    """Tensor product of the units of a list of algebras."""
    out = Tensor.scalar(spaces[0].field, spaces[0].field.one)
    for s in spaces:
        out = out.outer(s.unit)
    return out


def embed_legs(spaces, x: Tensor, positions) -> Tensor:
    """Place ``x``'s legs at ``positions`` in the ambient tensor power,
    filling every other leg with that algebra's unit."""
    positions = tuple(positions)
    if len(set(positions)) != len(positions):
        raise ShapeMismatch("position collision in %r" % (positions,))
    if len(positions) != x.arity:
        raise ShapeMismatch("%d positions for arity %d" % (len(positions), x.arity))
    for pos, d in zip(positions, x.dims):
        if not 0 <= pos < len(spaces):
            raise ShapeMismatch("position %d out of range" % pos)
        if spaces[pos].dim != d:
            raise ShapeMismatch("leg dim %d does not match space at position %d" % (d, pos))
    rest = [i for i in range(len(spaces)) if i not in positions]
    out = x
    for i in rest:
        out = out.outer(spaces[i].unit)
    order = list(positions) + rest
    inverse = [0] * len(spaces)
    for new_pos, old_pos in enumerate(order):
        inverse[old_pos] = new_pos
    return switch_legs(out, inverse)


def multiply(spaces, x: Tensor, y: Tensor) -> Tensor:
    """Componentwise product of two tensors over per-leg algebras."""
    if x.dims != y.dims:
        raise ShapeMismatch("dims %r vs %r" % (x.dims, y.dims))
    if tuple(s.dim for s in spaces) != x.dims:
        raise ShapeMismatch("spaces do not match tensor dims")
    field = x.field
    out = Tensor(field, x.dims)
    data = out.data
    for ix, vx in x.data.items():
        for iy, vy in y.data.items():
            # expand the per-leg structure constants for this pair
            terms = [((), vx * vy)]
            for leg, space in enumerate(spaces):
                col = space.mult.cols.get((ix[leg], iy[leg]))
                if not col:
                    terms = []
                    break
                terms = [(idx + k, v * w) for idx, v in terms for k, w in col.items()]
            for idx, v in terms:
                s = data.get(idx, field.zero) + v
                if s:
                    data[idx] = s
                else:
                    data.pop(idx, None)
    return out


def invert_element(spaces, x: Tensor) -> Tensor:
    """Two-sided inverse of ``x`` in the componentwise algebra, by exact
    linear solve; raises NotInvertible when none exists."""
    dims = tuple(s.dim for s in spaces)
    if x.dims != dims:
        raise ShapeMismatch("element dims %r do not match spaces" % (x.dims,))
    field = x.field
    n = _size(dims)
    # left-multiplication matrix of x
    lmat = linalg.zeros(field, n, n)
    strides = _strides(dims)
    for j, idx in enumerate(_all_indices(dims)):
        col = multiply(spaces, x, Tensor.basis(field, dims, idx))
        for out_idx, v in col.data.items():
            lmat[_flatten(out_idx, strides)][j] = v
    unit_vec = unit_tensor(spaces).to_flat()
    try:
        sol = linalg.solve(field, lmat, unit_vec)
    except linalg.NotInvertible as exc:
        raise NotInvertible("element has no right inverse") from exc
    u = Tensor.from_flat(field, dims, sol)
    if multiply(spaces, u, x) != unit_tensor(spaces):
        raise NotInvertible("right inverse is not a left inverse")
    return u


class El:
    """A tensor together with its per-leg spaces; chainable leg calculus.

    Every method returns a fresh ``El``.  ``merge(i, j)`` multiplies leg j
    into leg i (product taken in that order, result at slot i), ``map``
    applies a LinMap to chosen legs, ``times`` is the outer product.
    """

    __slots__ = ("spaces", "t")

    def __init__(self, spaces, t: Tensor):
        self.spaces = tuple(spaces)
        if tuple(s.dim for s in self.spaces) != t.dims:
            raise ShapeMismatch("spaces %r do not match tensor dims %r"
                                % (tuple(s.dim for s in self.spaces), t.dims))
        self.t = t

    @classmethod
    def unit(cls, spaces):
        return cls(spaces, unit_tensor(spaces))

    @classmethod
    def basis(cls, spaces, idx):
        field = spaces[0].field
        return cls(spaces, Tensor.basis(field, tuple(s.dim for s in spaces), idx))

    def map(self, m: LinMap, legs, at=None, out_spaces=None) -> "El":
        legs = (legs,) if isinstance(legs, int) else tuple(legs)
        if out_spaces is None:
            out_spaces = m.dst_spaces
            if out_spaces is None:
                raise ShapeMismatch("map carries no target spaces; pass out_spaces")
        remaining = [l for l in range(len(self.spaces)) if l not in legs]
        slot = at if at is not None else sum(1 for l in remaining if l < legs[0])
        spaces = tuple(self.spaces[l] for l in remaining[:slot]) + tuple(out_spaces) \
            + tuple(self.spaces[l] for l in remaining[slot:])
        return El(spaces, apply_linear_map(m, self.t, legs, at=at))

    def merge(self, i: int, j: int) -> "El":
        if self.spaces[i] is not self.spaces[j]:
            raise ShapeMismatch("legs %d and %d live in different algebras" % (i, j))
        alg = self.spaces[i]
        if not isinstance(alg, FinAlgebra):
            raise ShapeMismatch("leg %d is not an algebra leg" % i)
        slot = i if i < j else i - 1
        return self.map(alg.mult, (i, j), at=slot, out_spaces=(alg,))

    def times(self, other) -> "El":
        if isinstance(other, El):
            return El(self.spaces + other.spaces, self.t.outer(other.t))
        raise ShapeMismatch("outer product needs an El")

    def mul(self, other: "El") -> "El":
        if len(self.spaces) != len(other.spaces) or any(
                a is not b for a, b in zip(self.spaces, other.spaces)):
            raise ShapeMismatch("componentwise product needs identical spaces")
        return El(self.spaces, multiply(self.spaces, self.t, other.t))

    def mul_embedded(self, other: "El", positions) -> "El":
        return self.mul(other.embed(self.spaces, positions))

    def embed(self, ambient, positions) -> "El":
        return El(ambient, embed_legs(ambient, self.t, positions))

    def perm(self, order) -> "El":
        order = tuple(order)
        return El(tuple(self.spaces[p] for p in order), switch_legs(self.t, order))

    def scale(self, value) -> "El":
        return El(self.spaces, self.t.scale(value))

    def add(self, other: "El") -> "El":
        return El(self.spaces, self.t + other.t)

    def sub(self, other: "El") -> "El":
        return El(self.spaces, self.t - other.t)

    def drop_scalar_legs(self) -> "El":
        """Remove legs of dimension 1 created by counit-style maps."""
        keep = [i for i, s in enumerate(self.spaces) if s.dim > 1]
        groups = [[i] for i in keep]
        if not keep:
            return El((), self.t.fuse([list(range(self.t.arity))]) if self.t.arity else self.t)
        raise ShapeMismatch("drop_scalar_legs is only for fully scalar results")

    def inverse(self) -> "El":
        return El(self.spaces, invert_element(self.spaces, self.t))

    def __eq__(self, other):
        if not isinstance(other, El):
            return NotImplemented
        return self.t == other.t and tuple(s.dim for s in self.spaces) == tuple(
            s.dim for s in other.spaces)

    def __hash__(self):
        return hash(self.t)

    def __repr__(self):
        return "El(%r)" % (self.t,)
