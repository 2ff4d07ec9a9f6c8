"""Python front end for the etclosure C++ core.

Every call returns plain Python data decoded from the same JSON the
command line tool prints.
"""

import json

from . import _etclosure
from ._etclosure import CapExceeded, DomainError, SingularRatioError

__all__ = [
    "CapExceeded",
    "DomainError",
    "SingularRatioError",
    "VerificationFailed",
    "closure_coeff",
    "closure_table",
    "equilibrium",
    "moments",
    "verify",
    "cli",
]


class VerificationFailed(RuntimeError):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


def _decode(result, fmt="json"):
    code, text, err = result
    if code == 2:
        raise DomainError(err.strip())
    if code == 3:
        raise CapExceeded(err.strip())
    if code != 0 and not text:
        raise RuntimeError(err.strip())
    data = json.loads(text) if fmt == "json" else text
    return code, data


def closure_coeff(M, N, h, k, s):
    """Coefficient of the s-th basis tensor in C_{h,k}, as a list of terms."""
    return json.loads(_etclosure.closure_coeff(M, N, h, k, s))


def closure_table(M, N, hmax, kmax=0, format="json"):
    """Closure rows as a list of dicts, or the CSV text when format="csv"."""
    data = _decode(_etclosure.closure(M, N, hmax, kmax, format), format)[1]
    return data["rows"] if format == "json" else data


def verify(M, N, hmax=2, kmax=2, seed=20240601, tol=None, mutate=0, suite=None, check=False):
    code, report = _decode(_etclosure.verify(M, N, hmax, kmax, seed, tol, mutate, suite))
    if check and code != 0:
        raise VerificationFailed(report)
    return report


def equilibrium(lam, gamma, m=1.0, stats="mb"):
    return _decode(_etclosure.equilibrium(lam, gamma, m, stats))[1]


def moments(M, N, lam, mu, hmax=2, kmax=2, m=1.0, seed=20240601, dev_scale=0.0):
    return _decode(_etclosure.moments(M, N, hmax, kmax, lam, list(mu), m, seed, dev_scale))[1]


def cli(*args):
    """Run the command line front end in-process; returns (code, stdout, stderr)."""
    return _etclosure.cli([str(a) for a in args])
