"""Betti numbers of Hilbert schemes of points and their moduli transport.

The generating function of Poincare polynomials of S^[n] is the infinite
product over k >= 1 of (1 - z^{2k-2+i} t^k)^{(-1)^{i+1} b_i(S)}; for the
projective plane all three exponents are -1 and the expansion stays in
exact integers.  Low cohomological degrees of the moduli spaces of
one-dimensional plane sheaves coincide with Hilbert-scheme Betti numbers
of a point count determined by a normalised Euler characteristic chi_0.
"""

from __future__ import annotations

P2_BETTI = (1, 0, 1, 0, 1)


class RangeError(ValueError):
    """Requested Betti number is outside the transported range."""


def _add_shifted(row, src, shift, z_cap, sign):
    need = min(len(src) + shift, z_cap + 1)
    if len(row) < need:
        row.extend([0] * (need - len(row)))
    for i, c in enumerate(src):
        if c and i + shift <= z_cap:
            row[i + shift] += sign * c


def _series_mul_factor(series, z_exp, t_exp, exponent, n_max, z_cap):
    """Multiply a t-indexed z-series by (1 - z^z_exp t^t_exp)^exponent.

    A single geometric factor satisfies new[n] = old[n] + z^a new[n-k];
    a single polynomial factor gives new[n] = old[n] - z^a old[n-k].
    """
    for _ in range(abs(exponent)):
        new = []
        for n in range(n_max + 1):
            row = list(series[n])
            if n - t_exp >= 0 and z_exp <= z_cap:
                if exponent < 0:
                    _add_shifted(row, new[n - t_exp], z_exp, z_cap, 1)
                else:
                    _add_shifted(row, series[n - t_exp], z_exp, z_cap, -1)
            new.append(row)
        series = new
    return series


def goettsche(surface, n_max, z_cap=None):
    """Poincare polynomials of S^[n] for 0 <= n <= n_max, exactly.

    surface is the 5-tuple (b_0, ..., b_4); z_cap optionally truncates the
    cohomological degree (safe: every factor only raises z-exponents).
    Returns a list of integer coefficient lists indexed by n.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if len(surface) != 5:
        raise ValueError("surface Betti numbers must be a 5-tuple")
    if z_cap is None:
        z_cap = 4 * n_max
    series = [[1]] + [[0] for _ in range(n_max)]
    for k in range(1, n_max + 1):
        for i, b in enumerate(surface):
            if not b:
                continue
            exponent = b if i % 2 else -b
            series = _series_mul_factor(series, 2 * k - 2 + i, k,
                                        exponent, n_max, z_cap)
    out = []
    for n, row in enumerate(series):
        width = min(4 * n, z_cap) + 1
        padded = list(row[:width]) + [0] * (width - len(row))
        out.append(padded)
    return out


def euler_characteristic(poincare):
    return sum(poincare)


def is_palindromic(poincare):
    return poincare == poincare[::-1]


def chi_zero(d, chi):
    """The normalised Euler characteristic in the window [-2d+2, -d+1].

    The window of length d makes the representative of chi mod d unique
    and reproduces chi_0 = -d+1 at chi = 1.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    low = -2 * d + 2
    return low + (chi - low) % d


def chi_zero_window_note(d, chi):
    """Flag residues where the wider window [-2d-1, -d+1] is ambiguous."""
    value = chi_zero(d, chi)
    if value - d >= -2 * d - 1:
        return (f"chi_0 = {value} chosen in [-2d+2, -d+1]; the window "
                f"[-2d-1, -d+1] would also admit {value - d}")
    return None


def hilbert_points(d, chi):
    """Point count of the Hilbert scheme matching M_(d,chi) in low degrees."""
    return d * (d - 3) // 2 - chi_zero(d, chi)


def moduli_betti(d, chi, i):
    """b_i of the moduli space for even 0 <= i <= 2d-4, via Hilbert schemes."""
    if i % 2 or not 0 <= i <= 2 * d - 4:
        raise RangeError(f"transport applies to even 0 <= i <= {2 * d - 4}, got {i}")
    n = hilbert_points(d, chi)
    table = goettsche(P2_BETTI, n, z_cap=i)
    row = table[n]
    return row[i] if i < len(row) else 0
