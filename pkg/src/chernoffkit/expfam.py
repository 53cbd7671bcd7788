"""Exponential-family abstraction and the concrete families used in the kit.

Each family exposes its log-normalizer F, gradient (moment map), Legendre
conjugate F*, and conversions between ordinary, natural and moment
parameters.  Natural and moment parameters are flat numpy vectors; Gaussian
families pack (vector part, matrix part row-major) so the ordinary dot
product reproduces the trace inner product on the matrix block.

Carrier convention: constants such as (d/2) log(2*pi) are folded into F so
that the density normalizes with a carrier k(x) containing only
x-dependent terms (identically zero for the families below).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimMismatch, NotPositiveDefinite, OutOfDomain


@dataclass(frozen=True)
class GaussianParams:
    """Ordinary (mean, covariance) parameters of a multivariate Gaussian."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = linalg.SpdMatrix(self.cov).array
        if mean.shape[0] != cov.shape[0]:
            raise DimMismatch(
                f"mean has dim {mean.shape[0]} but cov has dim {cov.shape[0]}"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


def _vec(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


class UniGaussian:
    """Univariate Gaussian N(mu, v) as an exponential family.

    theta = (mu/v, -1/(2v)),  t(x) = (x, x^2),
    F(theta) = -theta1^2/(4 theta2) + (1/2) log(pi / (-theta2)),
    eta = (E[x], E[x^2]).
    """

    name = "uni-gaussian"
    natural_dim = 2

    def validate_natural(self, theta) -> np.ndarray:
        t = _vec(theta)
        if t.shape != (2,):
            raise OutOfDomain(f"expected 2 natural coordinates, got {t.shape}")
        if not t[1] < 0.0:
            raise OutOfDomain(f"theta2 must be negative, got {t[1]}")
        return t

    def validate_moment(self, eta) -> np.ndarray:
        e = _vec(eta)
        if e.shape != (2,):
            raise OutOfDomain(f"expected 2 moment coordinates, got {e.shape}")
        if not e[1] - e[0] ** 2 > 0.0:
            raise OutOfDomain("eta2 - eta1^2 must be positive")
        return e

    def log_normalizer(self, theta) -> float:
        t = self.validate_natural(theta)
        return -t[0] ** 2 / (4.0 * t[1]) + 0.5 * math.log(math.pi / -t[1])

    def grad_log_normalizer(self, theta) -> np.ndarray:
        t = self.validate_natural(theta)
        return np.array(
            [-t[0] / (2.0 * t[1]), -1.0 / (2.0 * t[1]) + t[0] ** 2 / (4.0 * t[1] ** 2)]
        )

    def conjugate(self, eta) -> float:
        e = self.validate_moment(eta)
        return -0.5 * math.log(2.0 * math.pi * math.e * (e[1] - e[0] ** 2))

    def theta_from_eta(self, eta) -> np.ndarray:
        e = self.validate_moment(eta)
        var = e[1] - e[0] ** 2
        return np.array([e[0] / var, -0.5 / var])

    def eta_from_theta(self, theta) -> np.ndarray:
        return self.grad_log_normalizer(theta)

    def theta_from_ordinary(self, lam) -> np.ndarray:
        mu, v = float(lam[0]), float(lam[1])
        if not v > 0.0:
            raise OutOfDomain(f"variance must be positive, got {v}")
        return np.array([mu / v, -0.5 / v])

    def ordinary_from_theta(self, theta) -> np.ndarray:
        t = self.validate_natural(theta)
        return np.array([-t[0] / (2.0 * t[1]), -0.5 / t[1]])

    def eta_from_ordinary(self, lam) -> np.ndarray:
        mu, v = float(lam[0]), float(lam[1])
        if not v > 0.0:
            raise OutOfDomain(f"variance must be positive, got {v}")
        return np.array([mu, mu * mu + v])

    def ordinary_from_eta(self, eta) -> np.ndarray:
        e = self.validate_moment(eta)
        return np.array([e[0], e[1] - e[0] ** 2])

    def density(self, theta, x) -> float:
        t = self.validate_natural(theta)
        x = float(x)
        return math.exp(t[0] * x + t[1] * x * x - self.log_normalizer(t))


class MvnGaussian:
    """d-variate Gaussian N(mu, Sigma).

    theta packs (Sigma^{-1} mu, (1/2) Sigma^{-1}) with the matrix block
    row-major; the sufficient statistic is t(x) = (x, -x x^T) so the flat dot
    product equals theta_v . x - x^T theta_M x.
    """

    name = "mvn-gaussian"

    def __init__(self, dim: int) -> None:
        if dim < 1:
            raise OutOfDomain("dimension must be >= 1")
        self.dim = dim
        self.natural_dim = dim + dim * dim

    def pack(self, vec: np.ndarray, mat: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(vec, float).ravel(), np.asarray(mat, float).ravel()])

    def unpack(self, theta) -> tuple[np.ndarray, np.ndarray]:
        t = _vec(theta)
        d = self.dim
        if t.shape != (self.natural_dim,):
            raise OutOfDomain(
                f"expected {self.natural_dim} coordinates, got {t.shape}"
            )
        return t[:d], t[d:].reshape(d, d)

    def validate_natural(self, theta) -> tuple[np.ndarray, np.ndarray]:
        v, m = self.unpack(theta)
        try:
            m = linalg.SpdMatrix(m).array
        except NotPositiveDefinite as exc:
            raise OutOfDomain(f"matrix block of theta is not SPD: {exc}") from exc
        return v, m

    def validate_moment(self, eta) -> tuple[np.ndarray, np.ndarray]:
        ev, _ = self._moment_cov(eta)
        return ev, self.unpack(eta)[1]

    def _moment_cov(self, eta) -> tuple[np.ndarray, np.ndarray]:
        ev, em = self.unpack(eta)
        try:
            cov = linalg.SpdMatrix(-em - np.outer(ev, ev)).array
        except NotPositiveDefinite as exc:
            raise OutOfDomain(f"moment parameter has no PD covariance: {exc}") from exc
        return ev, cov

    def log_normalizer(self, theta) -> float:
        tv, tm = self.validate_natural(theta)
        sol = np.linalg.solve(tm, tv)
        return (
            0.25 * float(tv @ sol)
            - 0.5 * linalg.log_det(tm)
            + 0.5 * self.dim * math.log(math.pi)
        )

    def grad_log_normalizer(self, theta) -> np.ndarray:
        tv, tm = self.validate_natural(theta)
        cov = 0.5 * linalg.spd_inverse(tm)
        mu = cov @ tv
        return self.pack(mu, -(cov + np.outer(mu, mu)))

    def conjugate(self, eta) -> float:
        th = self.theta_from_eta(eta)
        return float(np.dot(th, _vec(eta))) - self.log_normalizer(th)

    def theta_from_eta(self, eta) -> np.ndarray:
        ev, cov = self._moment_cov(eta)
        prec = linalg.spd_inverse(cov)
        return self.pack(prec @ ev, 0.5 * prec)

    def eta_from_theta(self, theta) -> np.ndarray:
        return self.grad_log_normalizer(theta)

    def theta_from_ordinary(self, params: GaussianParams) -> np.ndarray:
        prec = linalg.spd_inverse(params.cov)
        return self.pack(prec @ params.mean, 0.5 * prec)

    def ordinary_from_theta(self, theta) -> GaussianParams:
        tv, tm = self.validate_natural(theta)
        cov = 0.5 * linalg.spd_inverse(tm)
        return GaussianParams(mean=cov @ tv, cov=cov)

    def eta_from_ordinary(self, params: GaussianParams) -> np.ndarray:
        return self.pack(
            params.mean, -(params.cov + np.outer(params.mean, params.mean))
        )

    def ordinary_from_eta(self, eta) -> GaussianParams:
        ev, cov = self._moment_cov(eta)
        return GaussianParams(mean=ev, cov=cov)

    def density(self, theta, x) -> float:
        tv, tm = self.validate_natural(theta)
        x = _vec(x)
        if x.shape != (self.dim,):
            raise OutOfDomain(f"point has dim {x.shape}, family has dim {self.dim}")
        return math.exp(float(tv @ x) - float(x @ tm @ x) - self.log_normalizer(theta))


class CenteredMvn:
    """Centered d-variate Gaussian N(0, Sigma) with theta = Sigma^{-1}.

    t(x) = -(1/2) x x^T and F(theta) = -(1/2) log|theta| + (d/2) log(2 pi).
    """

    name = "centered-mvn"

    def __init__(self, dim: int) -> None:
        if dim < 1:
            raise OutOfDomain("dimension must be >= 1")
        self.dim = dim
        self.natural_dim = dim * dim

    def _mat(self, theta) -> np.ndarray:
        t = _vec(theta)
        if t.shape != (self.natural_dim,):
            raise OutOfDomain(f"expected {self.natural_dim} coordinates, got {t.shape}")
        return t.reshape(self.dim, self.dim)

    def validate_natural(self, theta) -> np.ndarray:
        m = self._mat(theta)
        try:
            return linalg.SpdMatrix(m).array
        except NotPositiveDefinite as exc:
            raise OutOfDomain(f"theta is not SPD: {exc}") from exc

    def validate_moment(self, eta) -> np.ndarray:
        m = self._mat(eta)
        try:
            linalg.SpdMatrix(-2.0 * m)
        except NotPositiveDefinite as exc:
            raise OutOfDomain(f"-2 eta must be SPD: {exc}") from exc
        return m

    def log_normalizer(self, theta) -> float:
        m = self.validate_natural(theta)
        return -0.5 * linalg.log_det(m) + 0.5 * self.dim * math.log(2.0 * math.pi)

    def grad_log_normalizer(self, theta) -> np.ndarray:
        m = self.validate_natural(theta)
        return (-0.5 * linalg.spd_inverse(m)).ravel()

    def conjugate(self, eta) -> float:
        th = self.theta_from_eta(eta)
        return float(np.dot(th, _vec(eta))) - self.log_normalizer(th)

    def theta_from_eta(self, eta) -> np.ndarray:
        m = self.validate_moment(eta)
        return linalg.spd_inverse(-2.0 * m).ravel()

    def eta_from_theta(self, theta) -> np.ndarray:
        return self.grad_log_normalizer(theta)

    def theta_from_ordinary(self, cov) -> np.ndarray:
        return linalg.spd_inverse(linalg.SpdMatrix(cov)).ravel()

    def ordinary_from_theta(self, theta) -> np.ndarray:
        return linalg.spd_inverse(self.validate_natural(theta))

    def eta_from_ordinary(self, cov) -> np.ndarray:
        return (-0.5 * linalg.SpdMatrix(cov).array).ravel()

    def ordinary_from_eta(self, eta) -> np.ndarray:
        return -2.0 * self.validate_moment(eta)

    def density(self, theta, x) -> float:
        m = self.validate_natural(theta)
        x = _vec(x)
        if x.shape != (self.dim,):
            raise OutOfDomain(f"point has dim {x.shape}, family has dim {self.dim}")
        return math.exp(-0.5 * float(x @ m @ x) - self.log_normalizer(theta))


class Categorical:
    """Categorical distribution on d outcomes, natural dimension d-1.

    theta_i = log(lambda_i / lambda_d) for i = 1..d-1 and
    F(theta) = log(1 + sum exp theta_i).  Moment coordinates are the first
    d-1 probabilities.
    """

    name = "categorical"

    def __init__(self, num_categories: int) -> None:
        if num_categories < 2:
            raise OutOfDomain("need at least 2 categories")
        self.num_categories = num_categories
        self.natural_dim = num_categories - 1

    def validate_natural(self, theta) -> np.ndarray:
        t = _vec(theta)
        if t.shape != (self.natural_dim,):
            raise OutOfDomain(f"expected {self.natural_dim} coordinates, got {t.shape}")
        if not np.all(np.isfinite(t)):
            raise OutOfDomain("natural parameter must be finite")
        return t

    def validate_moment(self, eta) -> np.ndarray:
        e = _vec(eta)
        if e.shape != (self.natural_dim,):
            raise OutOfDomain(f"expected {self.natural_dim} coordinates, got {e.shape}")
        if np.any(e <= 0.0) or e.sum() >= 1.0:
            raise OutOfDomain("moment coordinates must be positive with sum < 1")
        return e

    def log_normalizer(self, theta) -> float:
        t = self.validate_natural(theta)
        # log(1 + sum exp) computed stably around the largest exponent.
        m = max(0.0, float(t.max()))
        return m + math.log(math.exp(-m) + np.exp(t - m).sum())

    def grad_log_normalizer(self, theta) -> np.ndarray:
        t = self.validate_natural(theta)
        m = max(0.0, float(t.max()))
        w = np.exp(t - m)
        return w / (math.exp(-m) + w.sum())

    def conjugate(self, eta) -> float:
        e = self.validate_moment(eta)
        last = 1.0 - e.sum()
        return float((e * np.log(e)).sum()) + last * math.log(last)

    def theta_from_eta(self, eta) -> np.ndarray:
        e = self.validate_moment(eta)
        return np.log(e / (1.0 - e.sum()))

    def eta_from_theta(self, theta) -> np.ndarray:
        return self.grad_log_normalizer(theta)

    def theta_from_ordinary(self, probs) -> np.ndarray:
        p = self._check_simplex(probs)
        return np.log(p[:-1] / p[-1])

    def ordinary_from_theta(self, theta) -> np.ndarray:
        e = self.grad_log_normalizer(theta)
        return np.append(e, 1.0 - e.sum())

    def eta_from_ordinary(self, probs) -> np.ndarray:
        return self._check_simplex(probs)[:-1]

    def ordinary_from_eta(self, eta) -> np.ndarray:
        e = self.validate_moment(eta)
        return np.append(e, 1.0 - e.sum())

    def density(self, theta, x) -> float:
        t = self.validate_natural(theta)
        i = int(x)
        if not 0 <= i < self.num_categories:
            raise OutOfDomain(f"category {i} out of range")
        logit = t[i] if i < self.natural_dim else 0.0
        return math.exp(logit - self.log_normalizer(t))

    def _check_simplex(self, probs) -> np.ndarray:
        p = _vec(probs)
        if p.shape != (self.num_categories,):
            raise OutOfDomain(f"expected {self.num_categories} probabilities")
        if np.any(p <= 0.0) or abs(p.sum() - 1.0) > 1e-10:
            raise OutOfDomain("probabilities must be strictly positive and sum to 1")
        return p


# Functional aliases over the family objects, matching the operation names.

def log_normalizer(fam, theta) -> float:
    return fam.log_normalizer(theta)


def grad_log_normalizer(fam, theta) -> np.ndarray:
    return fam.grad_log_normalizer(theta)


def conjugate(fam, eta) -> float:
    return fam.conjugate(eta)


def theta_from_ordinary(fam, lam) -> np.ndarray:
    return fam.theta_from_ordinary(lam)


def ordinary_from_theta(fam, theta):
    return fam.ordinary_from_theta(theta)


def eta_from_theta(fam, theta) -> np.ndarray:
    return fam.eta_from_theta(theta)


def theta_from_eta(fam, eta) -> np.ndarray:
    return fam.theta_from_eta(eta)


def eta_from_ordinary(fam, lam) -> np.ndarray:
    return fam.eta_from_ordinary(lam)


def density(fam, theta, x) -> float:
    return fam.density(theta, x)
