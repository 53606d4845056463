"""Shared oracle helpers for the test suite.

All reference computations here deliberately avoid the library's own
special-function and quadrature code paths: they use scipy.special /
numpy sampling so each check compares two independent routes.
"""

import math

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.special import gammainc as sp_gammainc
from scipy.special import gammaincc as sp_gammaincc


def radiometer_statistics(n_d, variance, trials, seed, chunk=100_000):
    """Average received power over n_d noise-only samples of the given
    complex variance, drawn at the raw-normal level."""
    rng = np.random.default_rng(seed)
    out = np.empty(trials)
    scale = math.sqrt(variance / 2.0)
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        re = rng.normal(0.0, scale, (m, n_d))
        im = rng.normal(0.0, scale, (m, n_d))
        out[done : done + m] = np.mean(re * re + im * im, axis=1)
        done += m
    return out


def radiometer_statistics_signal(n_d, p_d, h_w, sigma_w2, trials, seed,
                                 chunk=100_000):
    """Same statistic under transmission: y = sqrt(P) h x + n with x ~ CN(0,1),
    built symbol by symbol rather than through the chi-square shortcut."""
    rng = np.random.default_rng(seed)
    out = np.empty(trials)
    nscale = math.sqrt(sigma_w2 / 2.0)
    amp = math.sqrt(p_d) * h_w
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        x = rng.normal(0.0, math.sqrt(0.5), (m, n_d)) + 1j * rng.normal(
            0.0, math.sqrt(0.5), (m, n_d)
        )
        n = rng.normal(0.0, nscale, (m, n_d)) + 1j * rng.normal(
            0.0, nscale, (m, n_d)
        )
        y = amp * x + n
        out[done : done + m] = np.mean(np.abs(y) ** 2, axis=1)
        done += m
    return out


def zeta_star_csi_ref(gain_power, sigma_w2, n_d):
    """scipy-based minimum total error at received power |h|^2 P (vectorized)."""
    gain_power = np.asarray(gain_power, dtype=float)
    snr = gain_power / sigma_w2
    with np.errstate(divide="ignore", invalid="ignore"):
        log_term = np.log1p(snr)
        arg_fa = n_d * (1.0 + 1.0 / snr) * log_term
        arg_md = n_d * (1.0 / snr) * log_term
        zeta = 1.0 - sp_gammainc(n_d, arg_fa) + sp_gammainc(n_d, arg_md)
    return np.where(gain_power > 0, zeta, 1.0)


def expected_zeta_cdi_grid(lams, p_d, sigma_w2, n_d, nodes=96):
    """Fading-averaged total error on a threshold grid via Gauss-Laguerre
    and scipy incomplete gammas (vectorized over the grid)."""
    lams = np.asarray(lams, dtype=float)
    x, w = laggauss(nodes)
    md = sp_gammainc(
        n_d, n_d * lams[:, None] / (x[None, :] * p_d + sigma_w2)
    ) @ w
    fa = sp_gammaincc(n_d, n_d * lams / sigma_w2)
    return fa + md


def sample_exponential_gains(n, seed):
    return np.random.default_rng(seed).exponential(1.0, n)
