"""Scenario and result containers shared by the outage methods."""

from dataclasses import dataclass

from .channel import NakagamiChannel
from .errors import InvalidParameterError
from .geometry import Region, distance_profile, region_contains, _as_xy

ALPHA_MIN = 2.0
ALPHA_MAX = 6.0


@dataclass(frozen=True, eq=False)
class Scenario:
    """One outage computation: where the receiver sits and who interferes.

    region: the network area containing the interferers.
    receiver: receiver coordinates (inside the closed region).
    r0: reference-transmitter distance (the intended link length).
    num_interferers: number of uniformly placed interfering nodes.
    channel: Nakagami shapes for the reference and interferer links.
    alpha: path-loss exponent in [2, 6].
    beta: SINR threshold, linear scale.
    rho0: mean SNR of the reference link at distance r0, linear scale.
    """
    region: Region
    receiver: object
    r0: float
    num_interferers: int
    channel: NakagamiChannel
    alpha: float
    beta: float
    rho0: float

    def __post_init__(self):
        if not (ALPHA_MIN <= self.alpha <= ALPHA_MAX):
            raise InvalidParameterError(
                f"path-loss exponent must lie in [2, 6], got {self.alpha}")
        if not self.r0 > 0:
            raise InvalidParameterError(f"r0 must be positive, got {self.r0}")
        if not self.beta > 0:
            raise InvalidParameterError(f"beta must be positive, got {self.beta}")
        if not self.rho0 > 0:
            raise InvalidParameterError(f"rho0 must be positive, got {self.rho0}")
        if self.num_interferers < 0 or \
                self.num_interferers != int(self.num_interferers):
            raise InvalidParameterError(
                f"number of interferers must be an integer >= 0, "
                f"got {self.num_interferers}")
        if not region_contains(self.region, self.receiver):
            raise InvalidParameterError("receiver lies outside the region")

    def profile(self):
        return distance_profile(self.region, _as_xy(self.receiver))


@dataclass(frozen=True)
class OutageResult:
    """Outage probability with provenance and accuracy metadata.

    method: "mgf", "rlpg", "mc", or "ppp".
    abs_error: best-effort absolute error bound (inversion target, quadrature
        estimate, or Monte Carlo standard error).
    std_error/trials: populated for Monte Carlo estimates only.
    """
    outage: float
    method: str
    abs_error: float = 0.0
    std_error: float = None
    trials: int = None
