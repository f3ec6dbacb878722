"""Universal bracket tensors on n-fold sums of a Lie algebra.

A tensor W assigns to x = (x_0..x_{n-1}), y = (y_0..y_{n-1}) in G^n the
bracket ([x, y]_W)_s = sum_{i,j} W^{ij}_s [x_i, y_j].  Entries are stored
sparsely as ``entries[(i, j, s)] = W^{ij}_s`` (upper, upper, lower index).
W defines a Lie bracket for every Lie algebra G iff W is symmetric in the
upper indices and the quadratic identity

    sum_k (W^{sk}_i W^{qp}_k - W^{qk}_i W^{sp}_k) = 0   for all i, s, q, p

holds; equivalently, iff the slice matrices (W^(k))_i^j = W^{kj}_i commute
pairwise.  Both routes are implemented and can be cross-checked against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from .algebra_core import (JacobiReport, StructureConstants,
                           bracket_coefficients, bracket_eval,
                           make_structure_constants)
from .errors import InternalCheckError, SizeCapError
from .linalg import identity_matrix, is_nilpotent, mats_equal, zeros_matrix
from .rationals import as_fraction, format_rational

MAX_N = 64
DEFAULT_CAP = 64

Entries = dict[tuple[int, int, int], Fraction]


@dataclass(frozen=True, eq=True)
class WTensor:
  n: int
  entries: Entries

  @cached_property
  def _pairs(self) -> dict[tuple[int, int], list[tuple[int, Fraction]]]:
    """Index {(i, j): [(s, W^{ij}_s), ...]} for bracket evaluation."""
    idx: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (i, j, s), v in self.entries.items():
      idx.setdefault((i, j), []).append((s, v))
    return idx


@dataclass(frozen=True)
class WValidationReport:
  """``failure`` is "symmetry" (indices (i, j, s)) or "quadratic"
  (indices (i, s, q, p)) when validation fails."""
  ok: bool
  failure: str | None = None
  indices: tuple | None = None
  residual: Fraction | None = None

  def __bool__(self) -> bool:
    return self.ok


def make_wtensor(n: int, entries) -> WTensor:
  if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_N:
    raise ValueError(f"n must be an integer in 1..{MAX_N}, got {n!r}")
  table: Entries = {}
  for key, value in entries.items():
    i, j, s = key
    for idx in (i, j, s):
      if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < n:
        raise ValueError(f"index {key!r} out of range for n={n}")
    v = as_fraction(value)
    if v != 0:
      table[(i, j, s)] = v
  return WTensor(n=n, entries=table)


# ---------------------------------------------------------------------------
# families


def direct_sum_w(n: int) -> WTensor:
  """Componentwise bracket: W^{ii}_i = 1."""
  return make_wtensor(n, {(i, i, i): 1 for i in range(n)})


def circulant_w(alpha) -> WTensor:
  """W^{sk}_i = alpha_{(s+k-i) mod n}; n = len(alpha)."""
  alpha = tuple(as_fraction(v) for v in alpha)
  n = len(alpha)
  entries = {}
  for s in range(n):
    for k in range(n):
      for i in range(n):
        v = alpha[(s + k - i) % n]
        if v != 0:
          entries[(s, k, i)] = v
  return make_wtensor(n, entries)


def leibnitz_w(n: int) -> WTensor:
  """Index-additive bracket without wrap-around: W^{ij}_{i+j} = 1, i+j < n."""
  entries = {}
  for i in range(n):
    for j in range(n - i):
      entries[(i, j, i + j)] = 1
  return make_wtensor(n, entries)


def leibnitz_deform(n: int, lam) -> WTensor:
  """One-parameter family: W^{ij}_{i+j} = 1 and W^{ij}_{i+j-n} = lam.

  lam = 0 gives leibnitz_w(n); lam = 1 gives circulant_w(e_0) (entrywise).
  """
  lam = as_fraction(lam)
  entries = {}
  for i in range(n):
    for j in range(n):
      if i + j < n:
        entries[(i, j, i + j)] = Fraction(1)
      elif lam != 0:
        entries[(i, j, i + j - n)] = lam
  return make_wtensor(n, entries)


def invalid_witness_w() -> WTensor:
  """Stored symmetric-but-invalid witness: n=2 with W^{01}_0 = W^{10}_0 = 1.

  Its slice matrices [[0,1],[0,0]] and [[1,0],[0,0]] do not commute, so the
  quadratic identity fails; correspondingly the induced bracket on sl2^2
  breaks Jacobi.
  """
  return make_wtensor(2, {(0, 1, 0): 1, (1, 0, 0): 1})


# ---------------------------------------------------------------------------
# slices and validation


def slice_matrix(w: WTensor, k: int) -> np.ndarray:
  """Exact slice (W^(k))_i^j = W^{kj}_i as an n x n rational matrix."""
  if not 0 <= k < w.n:
    raise ValueError(f"slice index {k} out of range for n={w.n}")
  out = zeros_matrix(w.n, w.n)
  for (i, j, s), v in w.entries.items():
    if i == k:
      out[s, j] = v
  return out


def alpha_slice_expand(alpha, s: int) -> np.ndarray:
  """Dense slice of the circulant family straight from alpha.

  M[i][j] = alpha_{(s+j-i) mod n}.  Asserted against
  slice_matrix(circulant_w(alpha), s); a mismatch is an internal error.
  """
  alpha = tuple(as_fraction(v) for v in alpha)
  n = len(alpha)
  if not 0 <= s < n:
    raise ValueError(f"slice index {s} out of range for n={n}")
  out = zeros_matrix(n, n)
  for i in range(n):
    for j in range(n):
      out[i, j] = alpha[(s + j - i) % n]
  if not mats_equal(out, slice_matrix(circulant_w(alpha), s)):
    raise InternalCheckError("alpha_slice_expand disagrees with slice_matrix")
  return out


def _symmetry_violation(w: WTensor):
  """Lexicographically first (i, j, s) with W^{ij}_s != W^{ji}_s, or None."""
  best = None
  for (i, j, s), v in w.entries.items():
    if i == j:
      continue
    mirror = w.entries.get((j, i, s), Fraction(0))
    if v != mirror:
      cand = min((i, j, s), (j, i, s))
      if best is None or cand < best:
        best = cand
  if best is None:
    return None
  i, j, s = best
  residual = w.entries.get((i, j, s), Fraction(0)) - w.entries.get(
      (j, i, s), Fraction(0))
  return best, residual


def _cleared_slices(w: WTensor) -> tuple[list[np.ndarray], int]:
  """Integer slice matrices (all entries scaled by one common factor)."""
  scale = 1
  for v in w.entries.values():
    scale = lcm(scale, v.denominator)
  max_abs = 0
  ints: dict[tuple[int, int, int], int] = {}
  for key, v in w.entries.items():
    iv = int(v * scale)
    ints[key] = iv
    max_abs = max(max_abs, abs(iv))
  n = w.n
  # int64 is safe when a commutator entry n*M*M cannot overflow
  dtype = np.int64 if n * max_abs * max_abs < 2**62 else object
  slices = [np.zeros((n, n), dtype=dtype) for _ in range(n)]
  for (i, j, s), iv in ints.items():
    slices[i][s, j] = iv
  return slices, scale


def _validate_by_slices(w: WTensor) -> WValidationReport:
  sym = _symmetry_violation(w)
  if sym is not None:
    indices, residual = sym
    return WValidationReport(ok=False, failure="symmetry", indices=indices,
                             residual=residual)
  slices, scale = _cleared_slices(w)
  n = w.n
  candidates = []
  for s in range(n):
    for q in range(s + 1, n):
      comm = slices[s].dot(slices[q]) - slices[q].dot(slices[s])
      nz = np.argwhere(comm != 0)
      if len(nz):
        sq_pairs = [((int(i), s, q, int(p)), comm[i, p]) for i, p in nz]
        candidates.append(min(sq_pairs))
  if not candidates:
    return WValidationReport(ok=True)
  (indices, raw) = min(candidates)
  return WValidationReport(ok=False, failure="quadratic", indices=indices,
                           residual=Fraction(int(raw), scale * scale))


def _validate_direct(w: WTensor) -> WValidationReport:
  """Direct quadruple-loop evaluation of the defining identities."""
  sym = _symmetry_violation(w)
  if sym is not None:
    indices, residual = sym
    return WValidationReport(ok=False, failure="symmetry", indices=indices,
                             residual=residual)
  n = w.n
  dense = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
  for (i, j, s), v in w.entries.items():
    dense[i][j][s] = v
  for i in range(n):
    for s in range(n):
      ds = dense[s]
      for q in range(n):
        dq = dense[q]
        for p in range(n):
          acc = Fraction(0)
          for k in range(n):
            acc += ds[k][i] * dq[p][k] - dq[k][i] * ds[p][k]
          if acc != 0:
            return WValidationReport(ok=False, failure="quadratic",
                                     indices=(i, s, q, p), residual=acc)
  return WValidationReport(ok=True)


def wtensor_validate(w: WTensor, cross_check: bool = False) -> WValidationReport:
  """Decide whether W defines a Lie bracket for every Lie algebra G.

  Default route: symmetry scan plus pairwise commutation of the slice
  matrices (on a denominator-cleared integer copy -- the identity is
  homogeneous, so scaling cannot change the verdict).  With
  ``cross_check=True`` the direct quadruple-loop route runs as well and any
  disagreement (verdict, indices or residual) raises InternalCheckError.

  When both identities fail, the symmetry violation is reported; quadratic
  violations carry the lexicographically first (i, s, q, p) with s < q (if
  (i, s, q, p) with s > q violates, the sign-flipped (i, q, s, p) violates
  too and precedes it, so nothing is missed).
  """
  report = _validate_by_slices(w)
  if cross_check:
    direct = _validate_direct(w)
    if (report.ok, report.failure, report.indices, report.residual) != (
        direct.ok, direct.failure, direct.indices, direct.residual):
      raise InternalCheckError(
          f"validation routes disagree: slices={report!r} direct={direct!r}")
  return report


# ---------------------------------------------------------------------------
# solvable-form helpers


def truncate_to_solvable(w: WTensor) -> WTensor:
  """Cut index 0 from all three index ranges and re-base to 0..n-2.

  Requires n >= 2 and a valid W.  For tensors whose slices are the identity
  plus strictly lower triangular nilpotents this recovers the companion
  solvable structure; for other valid tensors the result is a plain
  sub-tensor and need not stay valid.
  """
  if w.n < 2:
    raise ValueError("truncation requires n >= 2")
  report = wtensor_validate(w)
  if not report.ok:
    raise ValueError(f"cannot truncate an invalid tensor ({report.failure} "
                     f"violation at {report.indices})")
  entries = {(i - 1, j - 1, s - 1): v
             for (i, j, s), v in w.entries.items()
             if i >= 1 and j >= 1 and s >= 1}
  return WTensor(n=w.n - 1, entries=entries)


def filtration_support_check(w: WTensor) -> bool:
  """True iff every nonzero W^{ij}_s has s >= max(i, j) + 1.

  This is the support condition making F^(k) = span(components >= k) a
  descending chain of ideals in solvable form.
  """
  return all(s >= max(i, j) + 1 for (i, j, s) in w.entries)


def max_abelian_filtration_ideal(w: WTensor) -> int:
  """Minimal k such that W^{ij}_s = 0 whenever both i >= k and j >= k.

  F^(k) for that k is abelian under the extension bracket, universally in G.
  Returns 0 for the zero tensor; may return n (only F^(n) = 0 is abelian).
  """
  if not w.entries:
    return 0
  return 1 + max(min(i, j) for (i, j, s) in w.entries)


def semisimple_form_check(w: WTensor) -> bool:
  """True iff slice 0 is the identity and every other slice is nilpotent."""
  if not mats_equal(slice_matrix(w, 0), identity_matrix(w.n)):
    return False
  return all(is_nilpotent(slice_matrix(w, k)) for k in range(1, w.n))


# ---------------------------------------------------------------------------
# extension brackets on G^n


def gn_basis(n: int, d: int, block: int, coord: int) -> tuple:
  """Basis element of G^n: coordinate ``coord`` of block ``block``."""
  if not (0 <= block < n and 0 <= coord < d):
    raise ValueError("basis indices out of range")
  zero = tuple(Fraction(0) for _ in range(d))
  one = tuple(Fraction(1) if t == coord else Fraction(0) for t in range(d))
  return tuple(one if b == block else zero for b in range(n))


def extension_bracket(w: WTensor, c: StructureConstants, x, y) -> tuple:
  """([x, y]_W)_s = sum_{i,j} W^{ij}_s [x_i, y_j], exactly."""
  n, d = w.n, c.dim
  if len(x) != n or len(y) != n:
    raise ValueError(f"elements must have {n} blocks")
  for block in (*x, *y):
    if len(block) != d:
      raise ValueError(f"blocks must have length {d}")
  nz_x = [i for i in range(n) if any(v != 0 for v in x[i])]
  nz_y = [j for j in range(n) if any(v != 0 for v in y[j])]
  result = [[Fraction(0)] * d for _ in range(n)]
  pairs = w._pairs
  for i in nz_x:
    for j in nz_y:
      col = pairs.get((i, j))
      if not col:
        continue
      zb = bracket_eval(c, x[i], y[j])
      if all(v == 0 for v in zb):
        continue
      for s, v in col:
        row = result[s]
        for e in range(d):
          if zb[e]:
            row[e] += v * zb[e]
  return tuple(tuple(row) for row in result)


def induced_structure_constants(w: WTensor, c: StructureConstants,
                                cap: int = DEFAULT_CAP) -> StructureConstants:
  """Structure constants of the extension on G^n via the product formula
  c'_{(i,a),(j,b)}^{(s,e)} = W^{ij}_s c_ab^e, with flat index (i, a) = i*d + a.
  """
  n, d = w.n, c.dim
  nd = n * d
  if nd > cap:
    raise SizeCapError(f"extension dimension {nd} exceeds cap {cap}")
  pairs = w._pairs
  brackets = {}
  for u in range(nd):
    i, a = divmod(u, d)
    for v in range(u + 1, nd):
      j, b = divmod(v, d)
      col = pairs.get((i, j))
      if not col:
        continue
      cc = bracket_coefficients(c, a, b)
      if not cc:
        continue
      inner: dict[int, Fraction] = {}
      for s, wv in col:
        for e, q in cc.items():
          f = s * d + e
          t = inner.get(f, Fraction(0)) + wv * q
          if t:
            inner[f] = t
          elif f in inner:
            del inner[f]
      if inner:
        brackets[(u, v)] = inner
  return make_structure_constants(nd, brackets)


def jacobi_certify(w: WTensor, c: StructureConstants,
                   cap: int = DEFAULT_CAP) -> JacobiReport:
  """Certify Jacobi for the extension bracket on G^n over basis triples.

  Evaluates [[x, y], z] + [[y, z], x] + [[z, x], y] through
  extension_bracket directly (never through induced_structure_constants, so
  the two stay independently testable).  Violations carry flat indices
  (u, v, t, f) with u < v < t, f = s*d + e.
  """
  n, d = w.n, c.dim
  nd = n * d
  if nd > cap:
    raise SizeCapError(f"extension dimension {nd} exceeds cap {cap}")
  basis = [gn_basis(n, d, *divmod(u, d)) for u in range(nd)]
  cache: dict[tuple[int, int], tuple] = {}
  for u in range(nd):
    for v in range(u + 1, nd):
      cache[(u, v)] = extension_bracket(w, c, basis[u], basis[v])
  for u in range(nd):
    for v in range(u + 1, nd):
      zuv = cache[(u, v)]
      for t in range(v + 1, nd):
        term1 = extension_bracket(w, c, zuv, basis[t])
        term2 = extension_bracket(w, c, cache[(v, t)], basis[u])
        term3 = extension_bracket(w, c, cache[(u, t)], basis[v])
        for s in range(n):
          for e in range(d):
            r = term1[s][e] + term2[s][e] - term3[s][e]
            if r != 0:
              return JacobiReport(ok=False, violation=(u, v, t, s * d + e),
                                  residual=r)
  return JacobiReport(ok=True)


# ---------------------------------------------------------------------------
# serialization


def wtensor_to_json(w: WTensor) -> dict:
  """Canonical JSON-ready dict, entries sorted by (i, j, k)."""
  entries = [{"i": i, "j": j, "k": s, "value": format_rational(v)}
             for (i, j, s), v in sorted(w.entries.items())]
  return {"n": w.n, "entries": entries}


def wtensor_from_json(data) -> WTensor:
  """Strict parser for the W-tensor file format.

  Exact fields {"n", "entries"}; each entry {"i", "j", "k", "value"} with
  0-based in-range indices and canonical nonzero rational values.  Duplicate
  index triples are rejected; a pair of mirrored entries with different
  values is rejected as contradictory.  Entries are stored exactly as listed
  (no symmetrization): a file carrying only one side of a mirror pair loads
  into a tensor that fails validation.
  """
  if not isinstance(data, dict):
    raise ValueError("w-tensor document must be an object")
  if set(data) != {"n", "entries"}:
    raise ValueError("w-tensor document needs exactly fields 'n' and 'entries'")
  n = data["n"]
  if not isinstance(n, int) or isinstance(n, bool):
    raise ValueError("n must be an integer")
  if not isinstance(data["entries"], list):
    raise ValueError("entries must be a list")
  entries: Entries = {}
  for item in data["entries"]:
    if not isinstance(item, dict) or set(item) != {"i", "j", "k", "value"}:
      raise ValueError("each entry needs exactly fields i, j, k, value")
    key = []
    for field in ("i", "j", "k"):
      idx = item[field]
      if not isinstance(idx, int) or isinstance(idx, bool):
        raise ValueError(f"entry field {field} must be an integer")
      key.append(idx)
    key = tuple(key)
    v = as_fraction(item["value"])
    if v == 0:
      raise ValueError("zero entries are not stored in canonical files")
    if key in entries:
      raise ValueError(f"duplicate entry for indices {key}")
    entries[key] = v
  for (i, j, s), v in entries.items():
    mirror = entries.get((j, i, s))
    if mirror is not None and mirror != v:
      raise ValueError(
          f"contradictory mirrored entries at ({i}, {j}, {s}): "
          f"{format_rational(v)} vs {format_rational(mirror)}")
  return make_wtensor(n, entries)
