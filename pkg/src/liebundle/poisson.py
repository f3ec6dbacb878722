"""Linear Poisson structures attached to structure constants.

On the dual space with coordinates xi_0..xi_{d-1} the bracket
{f, g} = sum c_ab^e xi_e (df/dxi_a)(dg/dxi_b) is Poisson exactly when c
satisfies Jacobi.  Polynomials are exact: sparse exponent-tuple -> Fraction
maps, no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra_core import (JacobiReport, StructureConstants, center_basis,
                           validate_structure_constants)
from .errors import InternalCheckError
from .rationals import as_fraction, format_rational

Terms = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True, eq=True)
class PolyFunction:
  dim: int
  terms: Terms


@dataclass(frozen=True)
class PoissonTensor:
  """A validated linear Poisson structure (constants satisfy Jacobi)."""
  constants: StructureConstants


def make_poly(dim: int, terms) -> PolyFunction:
  """Normalize {exponent tuple: value}: full-length keys, zeros dropped."""
  if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
    raise ValueError(f"dim must be a positive integer, got {dim!r}")
  table: Terms = {}
  for exps, value in terms.items():
    exps = tuple(exps)
    if len(exps) != dim:
      raise ValueError(f"exponent tuple {exps!r} does not have length {dim}")
    for e in exps:
      if not isinstance(e, int) or isinstance(e, bool) or e < 0:
        raise ValueError(f"exponents must be non-negative integers: {exps!r}")
    if exps in table:
      raise ValueError(f"duplicate exponent tuple {exps!r}")
    v = as_fraction(value)
    if v != 0:
      table[exps] = v
  return PolyFunction(dim=dim, terms=table)


def poly_zero(dim: int) -> PolyFunction:
  return make_poly(dim, {})


def coordinate_poly(dim: int, a: int) -> PolyFunction:
  """The coordinate function xi_a."""
  if not 0 <= a < dim:
    raise ValueError(f"coordinate index {a} out of range")
  exps = tuple(1 if i == a else 0 for i in range(dim))
  return PolyFunction(dim=dim, terms={exps: Fraction(1)})


def is_zero_poly(f: PolyFunction) -> bool:
  return not f.terms


def poly_add(f: PolyFunction, g: PolyFunction) -> PolyFunction:
  if f.dim != g.dim:
    raise ValueError("polynomials live on different spaces")
  terms = dict(f.terms)
  for exps, v in g.terms.items():
    t = terms.get(exps, Fraction(0)) + v
    if t:
      terms[exps] = t
    elif exps in terms:
      del terms[exps]
  return PolyFunction(dim=f.dim, terms=terms)


def poly_scale(f: PolyFunction, scalar) -> PolyFunction:
  scalar = as_fraction(scalar)
  if scalar == 0:
    return PolyFunction(dim=f.dim, terms={})
  return PolyFunction(dim=f.dim, terms={e: scalar * v
                                        for e, v in f.terms.items()})


def poly_mul(f: PolyFunction, g: PolyFunction) -> PolyFunction:
  if f.dim != g.dim:
    raise ValueError("polynomials live on different spaces")
  terms: Terms = {}
  for e1, v1 in f.terms.items():
    for e2, v2 in g.terms.items():
      key = tuple(a + b for a, b in zip(e1, e2))
      t = terms.get(key, Fraction(0)) + v1 * v2
      if t:
        terms[key] = t
      elif key in terms:
        del terms[key]
  return PolyFunction(dim=f.dim, terms=terms)


def poly_diff(f: PolyFunction, a: int) -> PolyFunction:
  """Partial derivative with respect to xi_a."""
  if not 0 <= a < f.dim:
    raise ValueError(f"coordinate index {a} out of range")
  terms: Terms = {}
  for exps, v in f.terms.items():
    k = exps[a]
    if k:
      key = tuple(e - 1 if i == a else e for i, e in enumerate(exps))
      terms[key] = v * k
  return PolyFunction(dim=f.dim, terms=terms)


def make_poisson_tensor(c: StructureConstants) -> PoissonTensor:
  """Wrap validated structure constants; ValueError when Jacobi fails."""
  report = validate_structure_constants(c)
  if not report.ok:
    raise ValueError(
        f"constants fail Jacobi at {report.violation}: not a Poisson tensor")
  return PoissonTensor(constants=c)


def _constants_of(t) -> StructureConstants:
  if isinstance(t, PoissonTensor):
    return t.constants
  if isinstance(t, StructureConstants):
    return t
  raise ValueError(f"expected PoissonTensor or StructureConstants, got {t!r}")


def lie_poisson_bracket(t, f: PolyFunction, g: PolyFunction) -> PolyFunction:
  """{f, g} = sum over a < b of c_ab^e xi_e (f_a g_b - f_b g_a)."""
  c = _constants_of(t)
  d = c.dim
  if f.dim != d or g.dim != d:
    raise ValueError("polynomials do not match the algebra dimension")
  df = [poly_diff(f, a) for a in range(d)]
  dg = [poly_diff(g, a) for a in range(d)]
  out = poly_zero(d)
  for (a, b), coeffs in c.table.items():
    wedge = poly_add(poly_mul(df[a], dg[b]),
                     poly_scale(poly_mul(df[b], dg[a]), -1))
    if is_zero_poly(wedge):
      continue
    for e, v in coeffs.items():
      term = poly_mul(coordinate_poly(d, e), wedge)
      out = poly_add(out, poly_scale(term, v))
  return out


def poisson_jacobi_check(t) -> JacobiReport:
  """Jacobi for the polynomial bracket on coordinate functions.

  Computes {{xi_a, xi_b}, xi_c} + cyclic for all a < b < c and compares the
  verdict with validate_structure_constants on the same table (two routes;
  disagreement raises InternalCheckError).  Accepts raw StructureConstants
  so that invalid inputs can be *reported* rather than rejected upfront.
  """
  c = _constants_of(t)
  d = c.dim
  xi = [coordinate_poly(d, a) for a in range(d)]
  verdict: JacobiReport | None = None
  for a in range(d):
    for b in range(a + 1, d):
      for cc in range(b + 1, d):
        total = poly_zero(d)
        for x, y, z in ((a, b, cc), (b, cc, a), (cc, a, b)):
          inner = lie_poisson_bracket(c, xi[x], xi[y])
          total = poly_add(total, lie_poisson_bracket(c, inner, xi[z]))
        if not is_zero_poly(total):
          # the residual polynomial is linear; the monomial with the
          # lex-largest exponent tuple carries the smallest coordinate index
          exps, value = max(total.terms.items())
          f = exps.index(1)
          verdict = JacobiReport(ok=False, violation=(a, b, cc, f),
                                 residual=value)
          break
      # a failing report is falsy, so test for presence explicitly
      if verdict is not None:
        break
    if verdict is not None:
      break
  if verdict is None:
    verdict = JacobiReport(ok=True)
  table_report = validate_structure_constants(c)
  if (verdict.ok, verdict.violation, verdict.residual) != (
      table_report.ok, table_report.violation, table_report.residual):
    raise InternalCheckError(
        f"polynomial Jacobi ({verdict!r}) disagrees with the table scan "
        f"({table_report!r})")
  return verdict


def casimir_linear_basis(t) -> list[PolyFunction]:
  """Linear Casimirs: coordinate combinations from the exact center.

  Each returned polynomial is checked to Poisson-commute with every
  coordinate function (InternalCheckError on failure -- that would be a
  center computation bug).
  """
  c = _constants_of(t)
  d = c.dim
  out = []
  for vec in center_basis(c):
    poly = poly_zero(d)
    for a, v in enumerate(vec):
      if v != 0:
        poly = poly_add(poly, poly_scale(coordinate_poly(d, a), v))
    for b in range(d):
      if not is_zero_poly(lie_poisson_bracket(c, poly, coordinate_poly(d, b))):
        raise InternalCheckError("center vector fails to Poisson-commute")
    out.append(poly)
  return out


def involution_check(tensors, fs) -> bool:
  """True iff {f_i, f_j} = 0 for every pair under every given tensor."""
  if isinstance(tensors, (PoissonTensor, StructureConstants)):
    tensors = (tensors,)
  fs = list(fs)
  for t in tensors:
    for i in range(len(fs)):
      for j in range(i + 1, len(fs)):
        if not is_zero_poly(lie_poisson_bracket(t, fs[i], fs[j])):
          return False
  return True


# ---------------------------------------------------------------------------
# serialization


def poly_to_json(f: PolyFunction) -> dict:
  """Canonical JSON-ready dict, terms sorted by exponent tuple."""
  terms = [{"exps": list(exps), "value": format_rational(v)}
           for exps, v in sorted(f.terms.items())]
  return {"dim": f.dim, "terms": terms}


def poly_from_json(data) -> PolyFunction:
  """Strict parser for the polynomial file format."""
  if not isinstance(data, dict) or set(data) != {"dim", "terms"}:
    raise ValueError("polynomial document needs exactly fields 'dim' and 'terms'")
  dim = data["dim"]
  if not isinstance(dim, int) or isinstance(dim, bool):
    raise ValueError("dim must be an integer")
  if not isinstance(data["terms"], list):
    raise ValueError("terms must be a list")
  terms: Terms = {}
  for item in data["terms"]:
    if not isinstance(item, dict) or set(item) != {"exps", "value"}:
      raise ValueError("each term needs exactly fields exps, value")
    exps = item["exps"]
    if not isinstance(exps, list):
      raise ValueError("exps must be a list")
    key = []
    for e in exps:
      if not isinstance(e, int) or isinstance(e, bool) or e < 0:
        raise ValueError("exponents must be non-negative integers")
      key.append(e)
    key = tuple(key)
    if key in terms:
      raise ValueError(f"duplicate exponent tuple {list(key)}")
    v = as_fraction(item["value"])
    if v == 0:
      raise ValueError("zero terms are not stored in canonical files")
    terms[key] = v
  return make_poly(dim, terms)


def poly_to_text(f: PolyFunction) -> str:
  """Human-readable canonical rendering ("4*x1*x2 + x0^2"; "0" when empty)."""
  if not f.terms:
    return "0"
  pieces = []
  for exps, v in sorted(f.terms.items()):
    factors = []
    for i, e in enumerate(exps):
      if e == 1:
        factors.append(f"x{i}")
      elif e > 1:
        factors.append(f"x{i}^{e}")
    mag = abs(v)
    body = "*".join(factors)
    if not factors:
      body = format_rational(mag)
    elif mag != 1:
      body = f"{format_rational(mag)}*{body}"
    pieces.append((v < 0, body))
  first_neg, first_body = pieces[0]
  text = ("-" if first_neg else "") + first_body
  for neg, body in pieces[1:]:
    text += (" - " if neg else " + ") + body
  return text
