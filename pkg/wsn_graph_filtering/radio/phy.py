"""Physical-layer arithmetic: path loss, SINR, BER/PDR and geometric radii.

All SINR math runs in linear units (milliwatts); dBm values only appear
in RadioParams.
"""

from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np

from wsn_graph_filtering.exceptions import InfeasibleBroadcastRangeError, RadioModelError
from wsn_graph_filtering.models import RadioParams, Ranges

# near-field reference distance of the log-distance law, meters
REFERENCE_DISTANCE = 1.0


def dbm_to_mw(dbm: float | np.ndarray) -> float | np.ndarray:
    """Convert dBm to milliwatts."""
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float | np.ndarray) -> float | np.ndarray:
    """Convert milliwatts to dBm."""
    if isinstance(mw, np.ndarray):
        return 10.0 * np.log10(mw)
    if mw <= 0:
        raise RadioModelError(f"power must be positive to express in dBm, got {mw}")
    return 10.0 * math.log10(mw)


def received_power(params: RadioParams, d: float | np.ndarray) -> float | np.ndarray:
    """Received power P / d^nu in milliwatts, with d clamped below at 1 m.

    Raises:
        RadioModelError: If any distance is not positive
    """
    distance = np.asarray(d, dtype=float)
    if np.any(~(distance > 0)):
        raise RadioModelError(f"distance must be positive, got {d}")
    power = params.tx_power_mw / np.maximum(distance, REFERENCE_DISTANCE) ** params.nu
    return float(power) if power.ndim == 0 else power


def sinr_at(
    params: RadioParams,
    receiver: np.ndarray,
    transmitter: np.ndarray,
    interferers: Iterable[np.ndarray] = (),
) -> float:
    """Linear SINR at ``receiver`` for ``transmitter`` under concurrent ``interferers``.

    Raises:
        RadioModelError: If transmitter and receiver coincide
    """
    receiver = np.asarray(receiver, dtype=float)
    d_signal = float(np.linalg.norm(np.asarray(transmitter, dtype=float) - receiver))
    if d_signal == 0.0:
        raise RadioModelError("transmitter and receiver positions coincide")
    others = np.asarray(list(interferers), dtype=float).reshape(-1, 2)
    interference = 0.0
    if others.size:
        interference = float(np.sum(received_power(params, np.linalg.norm(others - receiver, axis=1))))
    return received_power(params, d_signal) / (interference + params.noise_mw)


def link_quality(params: RadioParams, sinr: float | np.ndarray) -> tuple[float | np.ndarray, float | np.ndarray]:
    """Bit error rate and packet delivery ratio of a link at linear ``sinr``.

    BER = c1 * sum_{k=2}^{c2} (-1)^k exp(c3 * sinr * (1/k - 1)), clamped to
    [0, 1]; PDR = (1 - BER)^z.
    """
    values = np.asarray(sinr, dtype=float)
    if np.any(values < 0):
        raise RadioModelError(f"SINR must be non-negative, got {sinr}")
    c1, c2, c3 = params.ber_consts
    k = np.arange(2, int(c2) + 1, dtype=float)
    terms = (-1.0) ** k * np.exp(c3 * values[..., None] * (1.0 / k - 1.0))
    ber = np.clip(c1 * terms.sum(axis=-1), 0.0, 1.0)
    pdr = (1.0 - ber) ** params.packet_bits
    if ber.ndim == 0:
        return float(ber), float(pdr)
    return ber, pdr


def max_range(params: RadioParams) -> float:
    """Maximum transmission radius R_m = (P / (kappa N0))^(1/nu)."""
    return (params.tx_power_mw / (params.kappa * params.noise_mw)) ** (1.0 / params.nu)


def ranges(params: RadioParams, n_interferers: int, r_broadcast: float | None = None) -> Ranges:
    """Broadcast, collision and preventing radii for ``n_interferers`` concurrent senders.

    Args:
        params: Radio parameters
        n_interferers: Interferer count the collision radius must tolerate
        r_broadcast: Broadcast range override; defaults to params.r_broadcast_m,
            then to chi * R_m

    Returns:
        Ranges with R_m, R_B, R_C and R_P = R_B + R_C

    Raises:
        InfeasibleBroadcastRangeError: If P <= kappa * R_B^nu * N0
    """
    if n_interferers < 0:
        raise RadioModelError(f"interferer count must be non-negative, got {n_interferers}")
    r_max = max_range(params)
    if r_broadcast is None:
        r_broadcast = params.r_broadcast_m if params.r_broadcast_m is not None else params.chi * r_max
    margin = params.tx_power_mw - params.kappa * r_broadcast**params.nu * params.noise_mw
    if not margin > 0:
        raise InfeasibleBroadcastRangeError(
            f"broadcast range {r_broadcast:.4g} m is not below the maximum range {r_max:.4g} m"
        )
    r_collision = (
        n_interferers * params.kappa * params.tx_power_mw * r_broadcast**params.nu / margin
    ) ** (1.0 / params.nu)
    return Ranges(
        r_max=r_max,
        r_broadcast=r_broadcast,
        r_collision=r_collision,
        r_preventing=r_broadcast + r_collision,
    )


def r_star_preventing(params: RadioParams, r_broadcast: float | None = None) -> float:
    """Preventing radius with a single interferer, the scale of the cluster worst case."""
    return ranges(params, 1, r_broadcast).r_preventing


def chi_connectivity_bound(params: RadioParams, side_len: float, n: int) -> tuple[float, float]:
    """Open interval of chi that keeps a uniform deployment connected w.h.p.

    Returns:
        (side_len * sqrt(log N / (pi N R_m^2)), 1.0)
    """
    if n < 2:
        raise RadioModelError(f"connectivity bound needs at least two nodes, got {n}")
    r_max = max_range(params)
    lower = side_len * math.sqrt(math.log(n) / (math.pi * n * r_max**2))
    return lower, 1.0
