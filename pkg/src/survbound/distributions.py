# Author: Hauxu Yu

# A module to model energy distributions rho(E)
# 1. analytic kinds (GammaHalf, PowerLaw, BreitWigner, Square)
# 2. discrete spectra and tabulated densities
# 3. normalization, truncation at a cut-off and energy moments
# 4. loading distribution spec files

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from scipy.special import betainc, betaln, gammainc, gammaln

from .errors import (CutoffOutOfSupport, InvalidDistribution, MomentDivergent, NegativeDensity,
                     NonNormalizable, SpecFileError)
from .moments import MomentVector, check_order
from .utils_functions import gauss_legendre_rule, guarded_sum, integrate

logger = logging.getLogger(__name__)

# Largest relative deviation of a tabulated weight from 1 accepted without --renormalize
MAX_WEIGHT_DEVIATION = 0.5

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class EnergyDistribution:
    """
    Base class of energy distributions. Subclasses store their raw data; every
    quantity below is computed for the density divided by its total weight.
    """

    kind = None
    two_sided = False

    @property
    def support_lower(self):
        raise NotImplementedError

    @property
    def support_upper(self):
        raise NotImplementedError

    @property
    def scale(self):
        """
        The natural energy unit (gamma or M).
        """
        raise NotImplementedError

    @property
    def weight(self):
        """
        Total weight of the raw data.
        """
        return 1.0

    def density(self, energy):
        """
        The normalized density rho(E), vectorized.
        """
        raise NotImplementedError

    def mass_below(self, c):
        """
        The weight alpha of the cut-off window.
        """
        return self.window_integrals(c, 0)[0]

    def window_integrals(self, c, n):
        """
        int rho(E) E^k / k! dE over the cut-off window, for k = 0..n.
        """
        raise NotImplementedError

    def full_moments(self, n):
        return self.window_integrals(self.support_upper, n)

    def quadrature_rule(self, lower=None, upper=None):
        """
        Nodes and normalized weights of a rule exact for polynomials times rho,
        or None for analytic kinds.
        """
        return None

    def central_moments(self, n, lower=None, upper=None):
        """
        (E - mean)^k / k! averaged over [lower, upper] for k = 0..n, summed on the
        exact rule, or None for analytic kinds.
        """
        rule = self.quadrature_rule(lower, upper)
        if rule is None:
            return None
        x, w = rule
        total, _ = guarded_sum(w)
        mean = guarded_sum(w * x)[0] / total
        offsets = x - mean
        values = [guarded_sum(w * offsets ** k)[0] / total / factorial(k) for k in range(n + 1)]
        values[0] = 1.0
        if n >= 1:
            values[1] = 0.0
        return np.array(values)

    def expectation(self, func, lower=None, upper=None, tol=1e-11):
        """
        int rho(E) func(E) dE over [lower, upper] (default: the support).
        """
        lower = self.support_lower if lower is None else lower
        upper = self.support_upper if upper is None else upper
        rule = self.quadrature_rule(lower, upper)
        if rule is not None:
            x, w = rule
            return float(np.sum(w * func(x)))
        return integrate(lambda e: self.density(e) * func(e), lower, upper, tol=tol)

    def rescaled(self, factor):
        """
        The same distribution with its raw weight multiplied by factor.
        """
        return self

    def describe(self):
        raise NotImplementedError


@dataclass(frozen=True)
class GammaHalf(EnergyDistribution):
    """
    rho(E) = E^(-1/2) exp(-E/gamma) / sqrt(pi gamma) for E > 0.
    """

    gamma: float = 1.0
    kind = "gamma_half"

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvalidDistribution("gamma must be positive, got {}".format(self.gamma))

    @property
    def support_lower(self):
        return 0.0

    @property
    def support_upper(self):
        return np.inf

    @property
    def scale(self):
        return self.gamma

    def density(self, energy):
        energy = np.asarray(energy, dtype=np.float64)
        safe = np.where(energy > 0, energy, 1.0)
        value = np.exp(-safe / self.gamma) / np.sqrt(np.pi * self.gamma * safe)
        return np.where(energy > 0, value, 0.0)

    def window_integrals(self, c, n):
        k = np.arange(n + 1)
        full = np.exp(k * np.log(self.gamma) + gammaln(k + 0.5) - gammaln(0.5) - gammaln(k + 1))
        if np.isinf(c):
            return full
        return full * gammainc(k + 0.5, c / self.gamma)

    def describe(self):
        return {"kind": self.kind, "gamma": self.gamma}


@dataclass(frozen=True)
class PowerLaw(EnergyDistribution):
    """
    rho(E) = (p - 1) / gamma * (1 + E/gamma)^(-p) for E > 0.
    Moments h_k exist for k < p - 1 only.
    """

    gamma: float = 1.0
    exponent: float = 3.5
    kind = "power_law"

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvalidDistribution("gamma must be positive, got {}".format(self.gamma))
        if not self.exponent > 1:
            raise InvalidDistribution("exponent must exceed 1, got {}".format(self.exponent))

    @property
    def support_lower(self):
        return 0.0

    @property
    def support_upper(self):
        return np.inf

    @property
    def scale(self):
        return self.gamma

    def density(self, energy):
        energy = np.asarray(energy, dtype=np.float64)
        value = (self.exponent - 1.0) / self.gamma * (1.0 + np.abs(energy) / self.gamma) ** (-self.exponent)
        return np.where(energy > 0, value, 0.0)

    def mass_below(self, c):
        if np.isinf(c):
            return 1.0
        return float(-np.expm1((1.0 - self.exponent) * np.log1p(c / self.gamma)))

    def window_integrals(self, c, n):
        p = self.exponent
        # E = gamma u / (1 - u) maps the window onto [0, u_c)
        u_c = 1.0 if np.isinf(c) else c / (self.gamma + c)
        values = []
        for k in range(n + 1):
            b = p - k - 1.0
            prefactor = np.exp(k * np.log(self.gamma) + np.log(p - 1.0) - gammaln(k + 1))
            if b > 0:
                full = np.exp(betaln(k + 1, b))
                integral = full if u_c == 1.0 else full * betainc(k + 1, b, u_c)
            elif u_c == 1.0:
                raise MomentDivergent(k)
            else:
                integral = integrate(lambda u, k=k, b=b: u ** k * (1.0 - u) ** (b - 1.0), 0.0, u_c, tol=0.0, rtol=1e-13)
            values.append(prefactor * integral)
        return np.array(values)

    def describe(self):
        return {"kind": self.kind, "gamma": self.gamma, "exponent": self.exponent}


@dataclass(frozen=True)
class BreitWigner(EnergyDistribution):
    """
    rho(E) = gamma / pi / ((E - E0)^2 + gamma^2) on the whole real line.
    Its cut-off windows are symmetric, [E0 - c, E0 + c], with c the half-width.
    """

    gamma: float = 1.0
    e0: float = 0.0
    kind = "breit_wigner"
    two_sided = True

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvalidDistribution("gamma must be positive, got {}".format(self.gamma))

    @property
    def support_lower(self):
        return -np.inf

    @property
    def support_upper(self):
        return np.inf

    @property
    def scale(self):
        return self.gamma

    def density(self, energy):
        energy = np.asarray(energy, dtype=np.float64)
        return self.gamma / np.pi / ((energy - self.e0) ** 2 + self.gamma ** 2)

    def mass_below(self, c):
        if np.isinf(c):
            return 1.0
        return float(2.0 / np.pi * np.arctan(c / self.gamma))

    def central_integrals(self, c, n):
        """
        (1/pi) int_{-a}^{a} s^j / (1 + s^2) ds for j = 0..n, a = c / gamma.
        """

        a = c / self.gamma
        m = np.zeros(n + 1)
        m[0] = 2.0 / np.pi * np.arctan(a)
        for j in range(2, n + 1, 2):
            if a >= 1.0:
                m[j] = 2.0 * a ** (j - 1) / (np.pi * (j - 1)) - m[j - 2]
            else:
                m[j] = 2.0 / np.pi * integrate(lambda s, j=j: s ** j / (1.0 + s * s), 0.0, a, tol=0.0, rtol=1e-13)
        return m

    def window_integrals(self, c, n):
        if np.isinf(c):
            if n >= 1:
                raise MomentDivergent(1)
            return np.array([1.0])
        central = self.central_integrals(c, n)
        scaled = np.array([central[j] * self.gamma ** j / factorial(j) for j in range(n + 1)])
        values = []
        for k in range(n + 1):
            values.append(sum(self.e0 ** (k - j) / factorial(k - j) * scaled[j] for j in range(k + 1)))
        return np.array(values)

    def describe(self):
        return {"kind": self.kind, "gamma": self.gamma, "e0": self.e0}


@dataclass(frozen=True)
class Square(EnergyDistribution):
    """
    A constant density on [0, M]. The height defaults to 1/M.
    """

    m: float = 1.0
    height: float | None = None
    kind = "square"

    def __post_init__(self):
        if not self.m > 0:
            raise InvalidDistribution("m must be positive, got {}".format(self.m))
        if self.height is not None and self.height < 0:
            raise NegativeDensity(0.0, self.height)

    @property
    def support_lower(self):
        return 0.0

    @property
    def support_upper(self):
        return self.m

    @property
    def scale(self):
        return self.m

    @property
    def weight(self):
        if self.height is None:
            return 1.0
        return self.height * self.m

    def density(self, energy):
        energy = np.asarray(energy, dtype=np.float64)
        return np.where((energy >= 0) & (energy <= self.m), 1.0 / self.m, 0.0)

    def mass_below(self, c):
        return min(c / self.m, 1.0)

    def window_integrals(self, c, n):
        c = min(c, self.m)
        return np.array([c ** (k + 1) / (self.m * factorial(k + 1)) for k in range(n + 1)])

    def quadrature_rule(self, lower=None, upper=None):
        lower = 0.0 if lower is None else max(lower, 0.0)
        upper = self.m if upper is None else min(upper, self.m)
        x, w = gauss_legendre_rule([lower, upper])
        return x, w / self.m

    def rescaled(self, factor):
        return Square(self.m, self.weight * factor / self.m)

    def describe(self):
        return {"kind": self.kind, "m": self.m}


@dataclass(frozen=True, eq=False)
class Discrete(EnergyDistribution):
    """
    A discrete spectrum: atoms of weight a_i at energies E_i, strictly increasing.
    """

    energies: np.ndarray = field(default_factory=lambda: np.array([0.0]))
    weights: np.ndarray = field(default_factory=lambda: np.array([1.0]))
    kind = "discrete"

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if energies.ndim != 1 or len(energies) == 0 or len(energies) != len(weights):
            raise InvalidDistribution("Atoms need matching, non-empty energy and weight lists.")
        if np.any(np.diff(energies) <= 0):
            raise InvalidDistribution("Atom energies must be strictly increasing.")
        for e, a in zip(energies, weights):
            if a < 0:
                raise NegativeDensity(e, a)
            if a == 0:
                raise InvalidDistribution("Atom at E = {} has zero weight.".format(e))
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_atoms(cls, atoms):
        atoms = np.asarray(atoms, dtype=np.float64).reshape(-1, 2)
        return cls(atoms[:, 0], atoms[:, 1])

    @property
    def support_lower(self):
        return float(self.energies[0])

    @property
    def support_upper(self):
        return float(self.energies[-1])

    @property
    def scale(self):
        width = self.energies[-1] - self.energies[0]
        return float(width) if width > 0 else 1.0

    @property
    def weight(self):
        return float(np.sum(self.weights))

    @property
    def probabilities(self):
        return self.weights / self.weight

    def density(self, energy):
        raise NotImplementedError("A discrete spectrum has no density.")

    def mass_below(self, c):
        return float(np.sum(self.probabilities[self.energies <= c]))

    def window_integrals(self, c, n):
        mask = self.energies <= c
        x, a = self.energies[mask], self.probabilities[mask]
        return np.array([np.sum(a * x ** k) / factorial(k) for k in range(n + 1)])

    def quadrature_rule(self, lower=None, upper=None):
        mask = np.ones(len(self.energies), dtype=bool)
        if lower is not None:
            mask &= self.energies >= lower
        if upper is not None:
            mask &= self.energies <= upper
        return self.energies[mask], self.probabilities[mask]

    def shifted(self, s):
        return Discrete(self.energies + s, self.weights)

    def rescaled(self, factor):
        return Discrete(self.energies, self.weights * factor)

    def describe(self):
        return {"kind": self.kind, "atoms": [[float(e), float(a)] for e, a in zip(self.energies, self.probabilities)]}


@dataclass(frozen=True, eq=False)
class Tabulated(EnergyDistribution):
    """
    A density sampled on a strictly increasing energy grid, linear in between
    and zero outside.
    """

    energies: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0]))
    densities: np.ndarray = field(default_factory=lambda: np.array([1.0, 1.0]))
    kind = "tabulated"

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=np.float64)
        densities = np.asarray(self.densities, dtype=np.float64)
        if energies.ndim != 1 or len(energies) < 2 or len(energies) != len(densities):
            raise InvalidDistribution("A tabulated density needs at least 2 samples.")
        if np.any(np.diff(energies) <= 0):
            raise InvalidDistribution("Tabulated energies must be strictly increasing.")
        negative = np.where(densities < 0)[0]
        if len(negative) > 0:
            i = negative[0]
            raise NegativeDensity(energies[i], densities[i])
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "densities", densities)

    @property
    def support_lower(self):
        return float(self.energies[0])

    @property
    def support_upper(self):
        return float(self.energies[-1])

    @property
    def scale(self):
        return float(self.energies[-1] - self.energies[0])

    @cached_property
    def weight(self):
        return float(trapezoid(self.densities, self.energies))

    def density(self, energy):
        return np.interp(energy, self.energies, self.densities, left=0.0, right=0.0) / self.weight

    def _nodes(self, lower, upper):
        inner = self.energies[(self.energies > lower) & (self.energies < upper)]
        return np.concatenate(([lower], inner, [upper]))

    def mass_below(self, c):
        if c >= self.support_upper:
            return 1.0
        nodes = self._nodes(self.support_lower, c)
        # the trapezoid rule is exact for a linear density
        return float(trapezoid(self.density(nodes), nodes))

    def window_integrals(self, c, n):
        x, w = self.quadrature_rule(self.support_lower, c)
        return np.array([np.sum(w * x ** k) / factorial(k) for k in range(n + 1)])

    def quadrature_rule(self, lower=None, upper=None):
        lower = self.support_lower if lower is None else max(lower, self.support_lower)
        upper = self.support_upper if upper is None else min(upper, self.support_upper)
        x, w = gauss_legendre_rule(self._nodes(lower, upper))
        return x, w * self.density(x)

    def shifted(self, s):
        return Tabulated(self.energies + s, self.densities)

    def rescaled(self, factor):
        return Tabulated(self.energies, self.densities * factor)

    def describe(self):
        return {"kind": self.kind, "samples": len(self.energies),
                "lower": self.support_lower, "upper": self.support_upper}


class TruncationView:
    """
    A distribution restricted to the energies below a cut-off c, L < c <= M.
    For two-sided kinds (BreitWigner) c is the half-width of the window
    [E0 - c, E0 + c].
    """

    def __init__(self, base, cutoff):
        self.base = base
        self.cutoff = float(cutoff)
        self.alpha = alpha_at(base, cutoff)
        if not self.alpha > 0:
            raise InvalidDistribution("No weight below the cut-off c = {}".format(cutoff))

    @property
    def two_sided(self):
        return self.base.two_sided

    @property
    def lower_edge(self):
        if self.two_sided:
            return self.base.e0 - self.cutoff
        return self.base.support_lower

    @property
    def upper_edge(self):
        if self.two_sided:
            return self.base.e0 + self.cutoff
        return self.cutoff

    @property
    def is_full(self):
        return not self.two_sided and self.cutoff >= self.base.support_upper

    def __repr__(self):
        return "TruncationView({}, c={}, alpha={:.6g})".format(self.base.kind, self.cutoff, self.alpha)


def check_cutoff(dist, c):
    """
    A function to check that c is a valid cut-off of dist.
    """

    if dist.two_sided:
        if not c > 0:
            raise CutoffOutOfSupport(c, 0.0, np.inf)
    elif not (dist.support_lower < c <= dist.support_upper):
        raise CutoffOutOfSupport(c, dist.support_lower, dist.support_upper)


def normalize(dist):
    """
    A function to rescale a distribution to unit total weight.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        A distribution whose raw weight may differ from 1.

    Returns
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution with unit weight.
    factor: float
        The rescale factor applied to the raw data.
    """

    weight = dist.weight
    if not np.isfinite(weight) or weight <= 0:
        raise NonNormalizable(weight)
    factor = 1.0 / weight
    if factor == 1.0:
        return dist, factor
    return dist.rescaled(factor), factor


def alpha_at(dist, c):
    """
    A function to compute the weight alpha below the cut-off c.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    c: float
        The cut-off.

    Returns
    ----------------------------------------------------------
    float
        alpha in (0, 1]; exactly 1 for c = M.
    """

    check_cutoff(dist, c)
    if not dist.two_sided and c >= dist.support_upper:
        return 1.0
    return min(float(dist.mass_below(c)), 1.0)


def raw_moments(dist, n):
    """
    A function to compute the energy moments H_k = h_k / k!, k = 0..n.
    A MomentDivergent error carries the moments below the divergent order.
    """

    check_order(n)
    try:
        scaled = dist.full_moments(n)
    except MomentDivergent as err:
        partial = None
        if err.k > 0:
            partial = MomentVector(dist.full_moments(err.k - 1))
        raise MomentDivergent(err.k, partial)
    return MomentVector(np.asarray(scaled, dtype=np.float64), central=dist.central_moments(n))


def truncated_moments(view, n):
    """
    A function to compute the truncated moments Hbar_k = alpha^-1 int rho E^k / k!
    over the cut-off window, k = 0..n.
    """

    check_order(n)
    if view.is_full:
        scaled = view.base.full_moments(n)
    else:
        scaled = view.base.window_integrals(view.cutoff, n) / view.alpha
    scaled = np.asarray(scaled, dtype=np.float64)
    scaled[0] = 1.0
    central = view.base.central_moments(n, view.lower_edge, view.upper_edge)
    return MomentVector(scaled, alpha=view.alpha, edge=view.upper_edge, central=central)


def _require(spec, name, path):
    if name not in spec:
        raise SpecFileError("Spec file '{}' has no field '{}'".format(path, name), field=name)
    return spec[name]


def _number(spec, name, path, default=None):
    if name not in spec and default is not None:
        return default
    value = _require(spec, name, path)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise SpecFileError("Field '{}' of '{}' must be a number, got {!r}".format(name, path, value), field=name)


def resolve_spec_path(path):
    """
    A function to find a spec file; bare names resolve to the bundled specs.
    """

    if os.path.exists(path):
        return path
    bundled = os.path.join(DATA_DIR, path if path.endswith(".json") else path + ".json")
    if os.path.exists(bundled):
        return bundled
    raise SpecFileError("Spec file '{}' not found".format(path))


def bundled_specs():
    """
    Names of the bundled distribution specs.
    """

    return sorted(f[:-5] for f in os.listdir(DATA_DIR) if f.endswith(".json"))


def read_tabulated(path):
    """
    A function to read a tabulated density from a CSV file with header E,rho.
    """

    try:
        df = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as err:
        raise SpecFileError("Cannot read tabulated density '{}': {}".format(path, err), field="file")
    for col in ("E", "rho"):
        if col not in df.columns:
            raise SpecFileError("Tabulated density '{}' has no column '{}'".format(path, col), field=col)
    return Tabulated(df["E"].to_numpy(dtype=np.float64), df["rho"].to_numpy(dtype=np.float64))


def distribution_from_spec(spec, path="<spec>", renormalize=False):
    """
    A function to build a unit-weight distribution from a parsed spec.

    Parameters
    ----------------------------------------------------------
    spec: dict
        Parsed spec, e.g. {"kind": "power_law", "gamma": 1.0, "exponent": 3.5}.
    path: str
        Path of the spec file, for messages and relative tabulated files.
    renormalize: bool
        Whether to accept tabulated densities far from unit weight.
    """

    if not isinstance(spec, dict):
        raise SpecFileError("Spec file '{}' must hold a JSON object".format(path))
    kind = _require(spec, "kind", path)

    if kind == "gamma_half":
        dist = GammaHalf(_number(spec, "gamma", path))
    elif kind == "power_law":
        dist = PowerLaw(_number(spec, "gamma", path), _number(spec, "exponent", path))
    elif kind == "breit_wigner":
        dist = BreitWigner(_number(spec, "gamma", path), _number(spec, "e0", path, default=0.0))
    elif kind == "square":
        height = spec.get("height")
        dist = Square(_number(spec, "m", path), None if height is None else float(height))
    elif kind == "discrete":
        atoms = _require(spec, "atoms", path)
        try:
            dist = Discrete.from_atoms(atoms)
        except ValueError as err:
            if isinstance(err, (InvalidDistribution, NegativeDensity)):
                raise
            raise SpecFileError("Field 'atoms' of '{}' must be a list of [energy, weight] pairs".format(path), field="atoms")
    elif kind == "tabulated":
        file_name = _require(spec, "file", path)
        if not os.path.isabs(file_name):
            file_name = os.path.join(os.path.dirname(os.path.abspath(path)), file_name)
        dist = read_tabulated(file_name)
        deviation = abs(dist.weight - 1.0)
        if deviation > MAX_WEIGHT_DEVIATION and not renormalize:
            raise InvalidDistribution(
                "Tabulated density has total weight {:.6g}; use --renormalize to rescale it".format(dist.weight))
    else:
        raise SpecFileError("Unknown distribution kind '{}' in '{}'".format(kind, path), field="kind")

    dist, factor = normalize(dist)
    if abs(factor - 1.0) > 1e-9:
        logger.warning("Distribution rescaled by a factor of %.6g to unit weight.", factor)
    return dist


def load_distribution(path, renormalize=False):
    """
    A function to load a distribution spec file (JSON) or a bundled spec by name.

    Parameters
    ----------------------------------------------------------
    path: str
        Path of the spec file, or the name of a bundled spec such as "power_law".
    renormalize: bool
        Whether to accept tabulated densities far from unit weight.

    Returns
    ----------------------------------------------------------
    EnergyDistribution
        The unit-weight distribution.
    """

    path = resolve_spec_path(path)
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as err:
        raise SpecFileError("Cannot read spec file '{}': {}".format(path, err))

    if text.strip() == "":
        spec = {}
    else:
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as err:
            raise SpecFileError("Spec file '{}' is not valid JSON: {}".format(path, err))

    dist = distribution_from_spec(spec, path, renormalize=renormalize)
    logger.info("Loaded %s distribution from %s", dist.kind, path)
    return dist
