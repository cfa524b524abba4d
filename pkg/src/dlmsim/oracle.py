"""Exact quantum-amplitude predictions for the optics scenarios.

Amplitudes are pairs of complex numbers for the two modes of a device.
These closed forms are the validation reference for every event-based
optics simulation in the package: the simulated channel fractions must
converge to the squared output amplitudes.

Port convention: amplitude index 0 maps to simulation sink N2 for the
single interferometer and to sink N4 for the chained one (covered by a
calibration test).
"""
from __future__ import annotations

import cmath
import math

Amplitudes = tuple[complex, complex]

_SQRT1_2 = math.sqrt(0.5)


def malus_intensity(psi: float, phi: float) -> tuple[float, float]:
    """Transmitted intensities (cos^2, sin^2) at relative angle psi - phi."""
    d = psi - phi
    return math.cos(d) ** 2, math.sin(d) ** 2


def polarizer_rotation(a: Amplitudes, phi: float) -> Amplitudes:
    """Rotate the polarization amplitude pair by the device angle."""
    a0, a1 = a
    c, s = math.cos(phi), math.sin(phi)
    return (c * a0 + s * a1, -s * a0 + c * a1)


def bs_amplitudes(a: Amplitudes) -> Amplitudes:
    """50/50 beam-splitter action: (1/sqrt2) [[1, i], [i, 1]]."""
    a0, a1 = a
    return ((a0 + 1j * a1) * _SQRT1_2, (a1 + 1j * a0) * _SQRT1_2)


def phase_shift(a: Amplitudes, phi0: float, phi1: float) -> Amplitudes:
    """Independent phase factors on the two modes."""
    a0, a1 = a
    return (a0 * cmath.exp(1j * phi0), a1 * cmath.exp(1j * phi1))


def mz_amplitudes(a: Amplitudes, phi0: float, phi1: float) -> Amplitudes:
    """Mach-Zehnder output amplitudes: splitter, arm phases, splitter."""
    return bs_amplitudes(phase_shift(bs_amplitudes(a), phi0, phi1))


def chained_mz_amplitudes(a: Amplitudes, phi0: float, phi1: float,
                          phi2: float, phi3: float) -> Amplitudes:
    """Two chained interferometers: three splitters, two phase stages."""
    b = bs_amplitudes(phase_shift(bs_amplitudes(a), phi0, phi1))
    return bs_amplitudes(phase_shift(b, phi2, phi3))


def source_amplitudes(p0: float, psi0: float, psi1: float) -> Amplitudes:
    """Input state for a source firing channel 0 with probability p0 and
    carrying phase angles psi0 / psi1 on the two channels."""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError("p0 must be in [0, 1]")
    return (math.sqrt(p0) * cmath.exp(1j * psi0),
            math.sqrt(1.0 - p0) * cmath.exp(1j * psi1))


def probabilities(a: Amplitudes) -> tuple[float, float]:
    a0, a1 = a
    return abs(a0) ** 2, abs(a1) ** 2
