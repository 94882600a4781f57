"""Compressed convolution operators over enumerated balls.

The two-sided compression of the convolution operator of f to the ball
B(R) is the matrix C[x, z] = f(x z^-1) over ball indices.  Assembling it
needs the index of y*z for every y in supp(f) and z in B(R).

Two construction paths produce identical matrices:

* a direct Python loop over (y, z) products, always available;
* a vectorised plan that packs elements into int64 codes and expands
  left-multiplication level by level with numpy.  Products may leave the
  ball transiently, which is why intermediate results are carried as
  codes and only the final products are looked up.

The vectorised path is what keeps ball-indicator compressions on
exponential-growth families (lamplighter at radius 12, say) desk-scale.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy import sparse

from .balls import BallIndex
from .errors import UsageError
from .groups import (
    FreeAbelianGroup,
    FreeGroup,
    GroupHandle,
    HeisenbergGroup,
    LamplighterGroup,
)

_INT64_BUDGET = 62  # bits we allow a packed code to occupy

_VECTOR_PATH_MIN_WORK = 4_000_000


class _Packer:
    """Packs canonical elements into int64 codes and applies generator
    left-multiplication directly on code arrays.  Codes stay valid for all
    elements of word length <= max_len."""

    def __init__(self, group: GroupHandle, max_len: int):
        self.group = group
        self.max_len = max_len

    def pack(self, elements) -> np.ndarray:
        raise NotImplementedError

    def left_mul(self, gen_index: int, codes: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class _FreeAbelianPacker(_Packer):
    def __init__(self, group: FreeAbelianGroup, max_len: int):
        super().__init__(group, max_len)
        self.offset = max_len + 1
        self.base = 2 * self.offset + 1
        self.strides = np.array(
            [self.base ** i for i in range(group.d)], dtype=np.int64
        )
        # generator j is +/- e_{j//2}
        self.deltas = [
            (1 if j % 2 == 0 else -1) * int(self.strides[j // 2])
            for j in range(2 * group.d)
        ]

    @staticmethod
    def ok(group: FreeAbelianGroup, max_len: int) -> bool:
        base = 2 * (max_len + 1) + 1
        return group.d * np.log2(base) <= _INT64_BUDGET

    def pack(self, elements) -> np.ndarray:
        arr = np.asarray(elements, dtype=np.int64).reshape(len(elements), -1)
        return (arr + self.offset) @ self.strides

    def left_mul(self, gen_index, codes):
        return codes + self.deltas[gen_index]


class _FreePacker(_Packer):
    """Words packed most-significant-first in base 2k+1; digit 0 is unused
    so the digit count equals the word length."""

    def __init__(self, group: FreeGroup, max_len: int):
        super().__init__(group, max_len)
        self.base = 2 * group.k + 1
        self.powers = np.array(
            [self.base ** i for i in range(max_len + 2)], dtype=np.int64
        )

    @staticmethod
    def ok(group: FreeGroup, max_len: int) -> bool:
        return (max_len + 2) * np.log2(2 * group.k + 1) <= _INT64_BUDGET

    @staticmethod
    def _digit(letter: int) -> int:
        return 2 * abs(letter) - (1 if letter > 0 else 0)

    def pack(self, elements) -> np.ndarray:
        out = np.empty(len(elements), dtype=np.int64)
        base = self.base
        for i, word in enumerate(elements):
            code = 0
            for letter in word:
                code = code * base + self._digit(letter)
            out[i] = code
        return out

    def left_mul(self, gen_index, codes):
        # generator j is letter +/- (j//2 + 1); prepend with cancellation
        letter = (gen_index // 2 + 1) * (1 if gen_index % 2 == 0 else -1)
        d = self._digit(letter)
        d_inv = ((d - 1) ^ 1) + 1
        n = np.searchsorted(self.powers, codes, side="right")
        lead_pow = self.powers[np.maximum(n, 1) - 1]
        lead = codes // lead_pow
        cancel = (n > 0) & (lead == d_inv)
        return np.where(cancel, codes - lead * lead_pow, codes + d * self.powers[n])


class _HeisenbergPacker(_Packer):
    def __init__(self, group: HeisenbergGroup, max_len: int):
        super().__init__(group, max_len)
        L = max_len + 1
        self.xy_off = L
        self.xy_base = 2 * L + 1
        self.z_off = L * L
        self.z_base = 2 * L * L + 1

    @staticmethod
    def ok(group: HeisenbergGroup, max_len: int) -> bool:
        L = max_len + 1
        bits = 2 * np.log2(2 * L + 1) + np.log2(2 * L * L + 1)
        return bits <= _INT64_BUDGET

    def _encode(self, x, y, z):
        return ((x + self.xy_off) * self.xy_base + (y + self.xy_off)) * self.z_base \
            + (z + self.z_off)

    def pack(self, elements) -> np.ndarray:
        arr = np.asarray(elements, dtype=np.int64)
        return self._encode(arr[:, 0], arr[:, 1], arr[:, 2])

    def left_mul(self, gen_index, codes):
        z = codes % self.z_base - self.z_off
        t = codes // self.z_base
        y = t % self.xy_base - self.xy_off
        x = t // self.xy_base - self.xy_off
        # left product by the generator: (s . g) for s in {a, a', b, b'}
        if gen_index == 0:
            x, z = x + 1, z + y
        elif gen_index == 1:
            x, z = x - 1, z - y
        elif gen_index == 2:
            y = y + 1
        else:
            y = y - 1
        return self._encode(x, y, z)


class _LamplighterPacker(_Packer):
    """Lamp configurations as a bitmask over the window [-W, W] with the
    walker position appended."""

    def __init__(self, group: LamplighterGroup, max_len: int):
        super().__init__(group, max_len)
        self.window = max_len + 1
        self.pos_base = 2 * self.window + 2

    @staticmethod
    def ok(group: LamplighterGroup, max_len: int) -> bool:
        window = max_len + 1
        bits = (2 * window + 1) + np.log2(2 * window + 2)
        return bits <= _INT64_BUDGET

    def pack(self, elements) -> np.ndarray:
        W, P = self.window, self.pos_base
        out = np.empty(len(elements), dtype=np.int64)
        for i, (lamps, pos) in enumerate(elements):
            mask = 0
            for q in lamps:
                mask |= 1 << (q + W)
            out[i] = mask * P + (pos + W)
        return out

    def left_mul(self, gen_index, codes):
        W, P = self.window, self.pos_base
        pos = codes % P
        mask = codes // P
        if gen_index == 0:            # toggle the lamp at the origin
            mask = mask ^ (1 << W)
        elif gen_index == 1:          # t: shift lamps up, step right
            mask = mask << 1
            pos = pos + 1
        else:                         # t': shift lamps down, step left
            mask = mask >> 1
            pos = pos - 1
        return mask * P + pos


_PACKERS = {
    FreeAbelianGroup: _FreeAbelianPacker,
    FreeGroup: _FreePacker,
    HeisenbergGroup: _HeisenbergPacker,
    LamplighterGroup: _LamplighterPacker,
}


def packer_for(group: GroupHandle, max_len: int) -> Optional[_Packer]:
    cls = _PACKERS.get(type(group))
    if cls is None or not cls.ok(group, max_len):
        return None
    return cls(group, max_len)


class _CodeLookup:
    def __init__(self, codes: np.ndarray):
        self.order = np.argsort(codes, kind="stable").astype(np.int64)
        self.sorted_codes = codes[self.order]

    def __call__(self, queries: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.sorted_codes, queries)
        pos_c = np.minimum(pos, len(self.sorted_codes) - 1)
        hit = self.sorted_codes[pos_c] == queries
        return np.where(hit, self.order[pos_c], -1)


def _coeff_array(ball: BallIndex, f) -> tuple[np.ndarray, int]:
    """Coefficients of f over ball indices plus the support radius."""
    coeffs = np.zeros(len(ball), dtype=np.float64)
    lf = 0
    for g, c in f.items():
        i = ball.index_of.get(g)
        if i is None:
            raise UsageError(
                f"support element {g!r} lies outside the ball of radius "
                f"{ball.radius}")
        coeffs[i] = c
        lf = max(lf, int(ball.lengths[i]))
    return coeffs, lf


def _coo_python(ball: BallIndex, f):
    group = ball.group
    mul, index_of = group.multiply, ball.index_of
    elements = ball.elements
    rows, cols, data = [], [], []
    for y, c in sorted(f.items(), key=lambda kv: ball.index_of[kv[0]]):
        hits = np.fromiter(
            (index_of.get(mul(y, z), -1) for z in elements),
            dtype=np.int64, count=len(elements),
        )
        keep = hits >= 0
        rows.append(hits[keep])
        cols.append(np.flatnonzero(keep).astype(np.int64))
        data.append(np.full(int(keep.sum()), c, dtype=np.float64))
    if not rows:
        return (np.empty(0, np.int64),) * 2 + (np.empty(0, np.float64),)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(data)


def _coo_vectorised(ball: BallIndex, coeffs: np.ndarray, lf: int,
                    packer: _Packer):
    group = ball.group
    n = len(ball)
    n_gens = len(group.generators)
    codes = packer.pack(ball.elements)
    lookup = _CodeLookup(codes)
    left_adj = [lookup(packer.left_mul(j, codes)) for j in range(n_gens)]
    lengths = ball.lengths

    rows_out, cols_out, data_out = [], [], []

    def emit(x_codes, y_idx, z_idx):
        live = coeffs[y_idx] != 0.0
        if not live.any():
            return
        x_idx = lookup(x_codes[live])
        inside = x_idx >= 0
        rows_out.append(x_idx[inside])
        cols_out.append(z_idx[live][inside])
        data_out.append(coeffs[y_idx[live][inside]])

    # layer 0: y = identity, x = z
    x_codes = codes.copy()
    y_idx = np.zeros(n, dtype=np.int64)
    z_idx = np.arange(n, dtype=np.int64)
    if coeffs[0] != 0.0:
        rows_out.append(z_idx)
        cols_out.append(z_idx)
        data_out.append(np.full(n, coeffs[0], dtype=np.float64))

    for level in range(1, lf + 1):
        parts = []
        for j in range(n_gens):
            ys = left_adj[j][y_idx]
            keep = (ys >= 0) & (lengths[ys] == level)
            if keep.any():
                parts.append((
                    packer.left_mul(j, x_codes[keep]),
                    ys[keep],
                    z_idx[keep],
                ))
        if not parts:
            break
        x_codes = np.concatenate([p[0] for p in parts])
        y_idx = np.concatenate([p[1] for p in parts])
        z_idx = np.concatenate([p[2] for p in parts])
        # a pair (y, z) determines the product; keep first occurrences
        key = y_idx * n + z_idx
        _, first = np.unique(key, return_index=True)
        x_codes, y_idx, z_idx = x_codes[first], y_idx[first], z_idx[first]
        emit(x_codes, y_idx, z_idx)

    if not rows_out:
        return (np.empty(0, np.int64),) * 2 + (np.empty(0, np.float64),)
    return (np.concatenate(rows_out), np.concatenate(cols_out),
            np.concatenate(data_out))


def compression_matrix(ball: BallIndex, f) -> sparse.csr_matrix:
    """C[x, z] = f(x z^-1) for x, z in the ball, as CSR."""
    n = len(ball)
    coeffs, lf = _coeff_array(ball, f)
    supp = int((coeffs != 0).sum())
    packer = packer_for(ball.group, ball.radius + lf)
    if packer is not None and supp * n >= _VECTOR_PATH_MIN_WORK:
        rows, cols, data = _coo_vectorised(ball, coeffs, lf, packer)
    else:
        rows, cols, data = _coo_python(ball, f)
    C = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    C.sum_duplicates()
    C.eliminate_zeros()
    return C
