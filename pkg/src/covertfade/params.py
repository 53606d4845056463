"""Scenario parameters shared by the analytic, optimizer and simulation layers."""

from dataclasses import dataclass, replace, fields

from .errors import DomainError

__all__ = ["SystemParams", "parse_params_file"]


@dataclass(frozen=True)
class SystemParams:
    """All scenario constants, defaulting to the reference numerical setup.

    Powers and noise variances are linear; ``rate`` is bits per channel use.
    ``p_d`` and ``n_d`` describe the transmission being analyzed or simulated
    (the optimizer treats them as design variables instead).
    """

    sigma_b2: float = 0.01
    sigma_w2: float = 0.05
    rate: float = 1.0
    p_max: float = 1.0
    n_t: int = 1
    p_t: float = None  # defaults to p_max
    n_d_min: int = 50
    n_d_max: int = 100
    epsilon: float = 0.05
    p_d: float = 0.01
    n_d: int = 50

    def __post_init__(self):
        if self.p_t is None:
            object.__setattr__(self, "p_t", self.p_max)
        object.__setattr__(self, "n_t", int(self.n_t))
        object.__setattr__(self, "n_d", int(self.n_d))
        object.__setattr__(self, "n_d_min", int(self.n_d_min))
        object.__setattr__(self, "n_d_max", int(self.n_d_max))
        if self.sigma_b2 <= 0 or self.sigma_w2 <= 0:
            raise DomainError("noise variances must be positive")
        if self.rate <= 0:
            raise DomainError("rate must be positive")
        if self.p_max <= 0 or self.p_t <= 0:
            raise DomainError("p_max and p_t must be positive")
        if self.p_d < 0:
            raise DomainError("p_d must be nonnegative")
        if self.n_t < 1 or self.n_d < 1:
            raise DomainError("n_t and n_d must be >= 1")
        if not (1 <= self.n_d_min <= self.n_d_max):
            raise DomainError("need 1 <= n_d_min <= n_d_max")
        if not (0 < self.epsilon < 1):
            raise DomainError("epsilon must lie in (0, 1)")

    def with_overrides(self, **kwargs) -> "SystemParams":
        return replace(self, **kwargs)


_INT_FIELDS = {"n_t", "n_d", "n_d_min", "n_d_max"}
_FIELD_NAMES = {f.name for f in fields(SystemParams)}


def parse_params_file(path) -> dict:
    """Read a ``key = value`` parameter file; '#' starts a comment."""
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _FIELD_NAMES:
                raise DomainError(f"{path}:{lineno}: unknown parameter {key!r}")
            overrides[key] = int(value) if key in _INT_FIELDS else float(value)
    return overrides
