"""Lie algebras given by exact rational structure constants.

A bracket on a d-dimensional space is stored sparsely as
``table[(a, b)] = {e: c_ab_e}`` for a < b (antisymmetry supplies the rest,
diagonal brackets are zero by construction).  Everything here is exact:
coefficients are Fractions and validation decisions never touch floats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InternalCheckError
from .linalg import frac_matrix, nullspace, zeros_matrix
from .rationals import as_fraction, format_rational

MAX_DIM = 64

Table = dict[tuple[int, int], dict[int, Fraction]]


@dataclass(frozen=True, eq=True)
class StructureConstants:
  dim: int
  table: Table
  name: str | None = None


@dataclass(frozen=True)
class JacobiReport:
  """Outcome of a Jacobi scan; ``violation`` is (a, b, c, f) when it fails."""
  ok: bool
  violation: tuple[int, int, int, int] | None = None
  residual: Fraction | None = None

  def __bool__(self) -> bool:
    return self.ok


@dataclass(frozen=True)
class MixedJacobiReport:
  ok: bool
  violation: tuple[int, int, int, int] | None = None
  residual: Fraction | None = None

  def __bool__(self) -> bool:
    return self.ok


@dataclass(frozen=True)
class CompatibilityReport:
  compatible: bool
  mixed: MixedJacobiReport
  sum_jacobi: JacobiReport

  def __bool__(self) -> bool:
    return self.compatible


def make_structure_constants(dim: int, brackets, name: str | None = None) -> StructureConstants:
  """Normalize a ``{(a, b): {e: value}}`` mapping into StructureConstants.

  Keys must satisfy 0 <= a < b < dim; values are coerced to Fraction and
  zero coefficients are dropped.  No Jacobi check happens here.
  """
  if not isinstance(dim, int) or isinstance(dim, bool) or not 1 <= dim <= MAX_DIM:
    raise ValueError(f"dim must be an integer in 1..{MAX_DIM}, got {dim!r}")
  table: Table = {}
  for key, coeffs in brackets.items():
    a, b = key
    if not (isinstance(a, int) and isinstance(b, int)):
      raise ValueError(f"bracket key must be an integer pair, got {key!r}")
    if not (0 <= a < b < dim):
      raise ValueError(f"bracket key must satisfy 0 <= a < b < dim, got {key!r}")
    if (a, b) in table:
      raise ValueError(f"duplicate bracket key {key!r}")
    inner: dict[int, Fraction] = {}
    for e, value in coeffs.items():
      if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < dim:
        raise ValueError(f"coefficient index {e!r} out of range for dim {dim}")
      if e in inner:
        raise ValueError(f"duplicate coefficient index {e} in bracket {key!r}")
      v = as_fraction(value)
      if v != 0:
        inner[e] = v
    if inner:
      table[(a, b)] = inner
  return StructureConstants(dim=dim, table=table, name=name)


_PARAM_NAME_RE = re.compile(r"^(abelian|so|gl)\((\d+)\)$")


def builtin_algebra(name: str) -> StructureConstants:
  """Return a builtin algebra by canonical name.

  Fixed names: ``heisenberg3``, ``sl2``, ``so3`` (cyclic basis).  Parametric
  names: ``abelian(d)`` (d >= 1), ``so(p)`` and ``gl(p)`` (p >= 2, matrix
  bases E_ab - E_ba for a < b, resp. E_ab).
  """
  if name == "heisenberg3":
    return make_structure_constants(3, {(0, 1): {2: 1}}, name=name)
  if name == "sl2":
    return make_structure_constants(
        3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, name=name)
  if name == "so3":
    return make_structure_constants(
        3, {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: 1}}, name=name)
  m = _PARAM_NAME_RE.match(name)
  if m is None:
    raise ValueError(f"unknown builtin algebra: {name!r}")
  family, digits = m.group(1), m.group(2)
  p = int(digits)
  if str(p) != digits:
    raise ValueError(f"non-canonical parameter in algebra name: {name!r}")
  if family == "abelian":
    if p < 1:
      raise ValueError("abelian(d) requires d >= 1")
    return make_structure_constants(p, {}, name=name)
  if p < 2:
    raise ValueError(f"{family}(p) requires p >= 2")
  if family == "so":
    basis = so_matrix_basis(p)
    return _matrix_algebra_constants(basis, _so_coordinates, name=name)
  basis = [_unit_matrix(p, a, b) for a in range(p) for b in range(p)]
  return _matrix_algebra_constants(basis, _gl_coordinates, name=name)


def so_matrix_basis(p: int) -> list[np.ndarray]:
  """Basis E_ab - E_ba of antisymmetric p x p matrices, (a, b) ascending."""
  out = []
  for a in range(p):
    for b in range(a + 1, p):
      mat = zeros_matrix(p, p)
      mat[a, b] = Fraction(1)
      mat[b, a] = Fraction(-1)
      out.append(mat)
  return out


def _unit_matrix(p: int, a: int, b: int) -> np.ndarray:
  mat = zeros_matrix(p, p)
  mat[a, b] = Fraction(1)
  return mat


def _so_coordinates(mat: np.ndarray) -> list[Fraction]:
  p = mat.shape[0]
  return [mat[a, b] for a in range(p) for b in range(a + 1, p)]


def _gl_coordinates(mat: np.ndarray) -> list[Fraction]:
  p = mat.shape[0]
  return [mat[a, b] for a in range(p) for b in range(p)]


def _matrix_algebra_constants(basis, coordinates, name=None) -> StructureConstants:
  dim = len(basis)
  brackets = {}
  for i in range(dim):
    for j in range(i + 1, dim):
      comm = basis[i].dot(basis[j]) - basis[j].dot(basis[i])
      coeffs = {e: v for e, v in enumerate(coordinates(comm)) if v != 0}
      if coeffs:
        brackets[(i, j)] = coeffs
  return make_structure_constants(dim, brackets, name=name)


def bracket_coefficients(c: StructureConstants, a: int, b: int) -> dict[int, Fraction]:
  """Coefficients of [e_a, e_b]; antisymmetry applied for a >= b.

  The returned dict must not be mutated (the a < b case aliases storage).
  """
  if a == b:
    return {}
  if a < b:
    return c.table.get((a, b), {})
  flipped = c.table.get((b, a))
  if not flipped:
    return {}
  return {e: -v for e, v in flipped.items()}


def basis_vector(dim: int, a: int) -> tuple[Fraction, ...]:
  if not 0 <= a < dim:
    raise ValueError(f"basis index {a} out of range for dim {dim}")
  return tuple(Fraction(1) if i == a else Fraction(0) for i in range(dim))


def bracket_eval(c: StructureConstants, x, y) -> tuple[Fraction, ...]:
  """Evaluate [x, y]: z_e = sum over a < b of (x_a y_b - x_b y_a) c_ab^e."""
  d = c.dim
  if len(x) != d or len(y) != d:
    raise ValueError("vector length does not match algebra dimension")
  z = [Fraction(0)] * d
  for (a, b), coeffs in c.table.items():
    t = x[a] * y[b] - x[b] * y[a]
    if t:
      for e, v in coeffs.items():
        z[e] += t * v
  return tuple(z)


def ad_matrix(c: StructureConstants, x) -> np.ndarray:
  """Matrix of ad_x = [x, .] in the chosen basis (columns are [x, e_b])."""
  d = c.dim
  out = zeros_matrix(d, d)
  for b in range(d):
    col = bracket_eval(c, x, basis_vector(d, b))
    for e in range(d):
      out[e, b] = col[e]
  return out


def validate_structure_constants(c: StructureConstants) -> JacobiReport:
  """Scan the Jacobi identity over basis triples.

  The Jacobiator of an antisymmetric bracket is alternating, so triples
  a < b < c suffice; the first violation is the lexicographically smallest
  (a, b, c) and, within it, the smallest output component f.
  """
  d = c.dim
  for a in range(d):
    for b in range(a + 1, d):
      cab = c.table.get((a, b))
      for cc in range(b + 1, d):
        acc: dict[int, Fraction] = {}
        for x, y, z in ((a, b, cc), (b, cc, a), (cc, a, b)):
          first = bracket_coefficients(c, x, y) if (x, y) != (a, b) else (cab or {})
          for e, q in first.items():
            for f, r in bracket_coefficients(c, e, z).items():
              acc[f] = acc.get(f, Fraction(0)) + q * r
        for f in sorted(acc):
          if acc[f] != 0:
            return JacobiReport(ok=False, violation=(a, b, cc, f), residual=acc[f])
  return JacobiReport(ok=True)


def center_basis(c: StructureConstants) -> list[tuple[Fraction, ...]]:
  """Deterministic exact basis of the center {x : [x, y] = 0 for all y}.

  Solves the linear system sum_a x_a c_ab^e = 0 over all (b, e).
  """
  d = c.dim
  system = zeros_matrix(d * d, d)
  for (a, b), coeffs in c.table.items():
    for e, v in coeffs.items():
      system[b * d + e, a] += v
      system[a * d + e, b] -= v
  return nullspace(system)


def mixed_jacobi_check(first: StructureConstants,
                       second: StructureConstants) -> MixedJacobiReport:
  """Check the mixed Jacobi identity coupling two brackets on one space.

  The residual at (X1, X2, X3) is the cyclic sum of
  [X1, [X2, X3]_1]_2 + [X1, [X2, X3]_2]_1.  It vanishes identically iff the
  sum of the two brackets satisfies Jacobi.  The expression is a difference
  of Jacobiators, hence alternating: basis triples i < j < k suffice.
  """
  if first.dim != second.dim:
    raise ValueError("brackets live on spaces of different dimension")
  d = first.dim
  ident = [basis_vector(d, i) for i in range(d)]
  for i in range(d):
    for j in range(i + 1, d):
      for k in range(j + 1, d):
        total = [Fraction(0)] * d
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
          inner1 = bracket_eval(first, ident[y], ident[z])
          inner2 = bracket_eval(second, ident[y], ident[z])
          t1 = bracket_eval(second, ident[x], inner1)
          t2 = bracket_eval(first, ident[x], inner2)
          for e in range(d):
            total[e] += t1[e] + t2[e]
        for f in range(d):
          if total[f] != 0:
            return MixedJacobiReport(ok=False, violation=(i, j, k, f),
                                     residual=total[f])
  return MixedJacobiReport(ok=True)


def _combine_tables(first: StructureConstants, second: StructureConstants,
                    lam: Fraction, mu: Fraction) -> Table:
  table: Table = {}
  keys = set(first.table) | set(second.table)
  for key in keys:
    inner: dict[int, Fraction] = {}
    ca = first.table.get(key, {})
    cb = second.table.get(key, {})
    for e in set(ca) | set(cb):
      v = lam * ca.get(e, Fraction(0)) + mu * cb.get(e, Fraction(0))
      if v != 0:
        inner[e] = v
    if inner:
      table[key] = inner
  return table


def compatibility_check(first: StructureConstants,
                        second: StructureConstants) -> CompatibilityReport:
  """Decide whether two Lie brackets have a Lie bracket sum.

  Both inputs must individually satisfy Jacobi (ValueError otherwise --
  a precondition failure, not an incompatibility verdict).  The mixed-Jacobi
  route and the validate-the-sum route are both evaluated and must agree;
  disagreement raises InternalCheckError.
  """
  r1 = validate_structure_constants(first)
  if not r1.ok:
    raise ValueError(f"first bracket fails Jacobi at {r1.violation}")
  r2 = validate_structure_constants(second)
  if not r2.ok:
    raise ValueError(f"second bracket fails Jacobi at {r2.violation}")
  mixed = mixed_jacobi_check(first, second)
  total = StructureConstants(first.dim, _combine_tables(
      first, second, Fraction(1), Fraction(1)))
  sum_jacobi = validate_structure_constants(total)
  if mixed.ok != sum_jacobi.ok:
    raise InternalCheckError(
        "mixed-Jacobi and sum-Jacobi routes disagree: "
        f"mixed={mixed!r} sum={sum_jacobi!r}")
  return CompatibilityReport(compatible=mixed.ok, mixed=mixed,
                             sum_jacobi=sum_jacobi)


def pencil_bracket(first: StructureConstants, second: StructureConstants,
                   lam, mu) -> StructureConstants:
  """Return lam*first + mu*second for a compatible pair.

  Every member of the pencil of a compatible pair is again a Lie bracket.
  """
  report = compatibility_check(first, second)
  if not report.compatible:
    raise ValueError(
        f"incompatible pair: mixed Jacobi fails at {report.mixed.violation}")
  lam = as_fraction(lam)
  mu = as_fraction(mu)
  return StructureConstants(first.dim, _combine_tables(first, second, lam, mu))


def sum_bracket_table(first: StructureConstants,
                      second: StructureConstants) -> StructureConstants:
  """Plain entrywise sum of two tables, with no compatibility requirement."""
  if first.dim != second.dim:
    raise ValueError("brackets live on spaces of different dimension")
  return StructureConstants(first.dim, _combine_tables(
      first, second, Fraction(1), Fraction(1)))


def coboundary_of_one_cochain(c: StructureConstants, beta) -> StructureConstants:
  """Table of d_beta(X, Y) = [X, beta(Y)] - [Y, beta(X)] - beta([X, Y]).

  ``beta`` is a d x d rational matrix.  The result is a bracket table that
  need not satisfy Jacobi; with beta = identity it reproduces ``c``.
  """
  d = c.dim
  bmat = frac_matrix(beta)
  if bmat.shape != (d, d):
    raise ValueError(f"one-cochain must be a {d} x {d} matrix")
  ident = [basis_vector(d, i) for i in range(d)]
  cols = [tuple(bmat[:, j]) for j in range(d)]
  brackets = {}
  for a in range(d):
    for b in range(a + 1, d):
      t1 = bracket_eval(c, ident[a], cols[b])
      t2 = bracket_eval(c, ident[b], cols[a])
      inner_vec = bracket_eval(c, ident[a], ident[b])
      t3 = bmat.dot(np.array(inner_vec, dtype=object))
      coeffs = {}
      for e in range(d):
        v = t1[e] - t2[e] - t3[e]
        if v != 0:
          coeffs[e] = v
      if coeffs:
        brackets[(a, b)] = coeffs
  return StructureConstants(d, brackets)


def structure_constants_to_json(c: StructureConstants) -> dict:
  """Canonical JSON-ready dict: brackets sorted by (a, b), coeffs by e."""
  brackets = []
  for (a, b) in sorted(c.table):
    coeffs = [{"e": e, "value": format_rational(v)}
              for e, v in sorted(c.table[(a, b)].items())]
    brackets.append({"a": a, "b": b, "coeffs": coeffs})
  out: dict = {"dim": c.dim}
  if c.name is not None:
    out["name"] = c.name
  out["brackets"] = brackets
  return out


def _require_int(value, what: str) -> int:
  if not isinstance(value, int) or isinstance(value, bool):
    raise ValueError(f"{what} must be an integer, got {value!r}")
  return value


def structure_constants_from_json(data) -> StructureConstants:
  """Strict parser for the structure-constants file format.

  Unknown fields, non-canonical rationals, zero coefficients, duplicate or
  misordered index pairs are all rejected.
  """
  if not isinstance(data, dict):
    raise ValueError("structure-constants document must be an object")
  allowed = {"dim", "name", "brackets"}
  extra = set(data) - allowed
  if extra:
    raise ValueError(f"unknown fields: {sorted(extra)}")
  if "dim" not in data or "brackets" not in data:
    raise ValueError("missing required fields 'dim' and/or 'brackets'")
  dim = _require_int(data["dim"], "dim")
  name = data.get("name")
  if name is not None and not isinstance(name, str):
    raise ValueError("name must be a string")
  if not isinstance(data["brackets"], list):
    raise ValueError("brackets must be a list")
  brackets = {}
  for item in data["brackets"]:
    if not isinstance(item, dict):
      raise ValueError("each bracket must be an object")
    extra = set(item) - {"a", "b", "coeffs"}
    if extra:
      raise ValueError(f"unknown bracket fields: {sorted(extra)}")
    if set(item) != {"a", "b", "coeffs"}:
      raise ValueError("bracket needs exactly fields a, b, coeffs")
    a = _require_int(item["a"], "a")
    b = _require_int(item["b"], "b")
    if not a < b:
      raise ValueError(f"bracket indices must satisfy a < b, got ({a}, {b})")
    if (a, b) in brackets:
      raise ValueError(f"duplicate bracket ({a}, {b})")
    if not isinstance(item["coeffs"], list) or not item["coeffs"]:
      raise ValueError("coeffs must be a non-empty list")
    coeffs = {}
    for co in item["coeffs"]:
      if not isinstance(co, dict) or set(co) != {"e", "value"}:
        raise ValueError("each coefficient needs exactly fields e, value")
      e = _require_int(co["e"], "e")
      if e in coeffs:
        raise ValueError(f"duplicate coefficient index {e} in bracket ({a}, {b})")
      v = as_fraction(co["value"])
      if v == 0:
        raise ValueError("zero coefficients are not stored in canonical files")
      coeffs[e] = v
    brackets[(a, b)] = coeffs
  return make_structure_constants(dim, brackets, name=name)
