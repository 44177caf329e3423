"""The solvable Iwasawa algebra a + n of complex hyperbolic space CH^n.

Basis ordering is ``(B; X_1, Y_1, ..., X_{n-1}, Y_{n-1}; Z)`` with
``J X_i = Y_i`` and ``J B = Z``.  The root space g_alpha is spanned by the
``X_i, Y_i`` and is identified with C^{n-1} through ``X_i -> 1``,
``Y_i -> i`` in the i-th complex coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._validation import check_vector
from .algebra import MetricLieAlgebra


@dataclass(frozen=True, eq=False)
class AmbientModel:
    n: int
    algebra: MetricLieAlgebra
    J: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def index_B(self) -> int:
        return 0

    @property
    def index_Z(self) -> int:
        return 2 * self.n - 1

    @property
    def alpha_range(self) -> range:
        return range(1, 2 * self.n - 1)

    @property
    def alpha_dim(self) -> int:
        return 2 * self.n - 2

    @property
    def B(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[0] = 1.0
        return v

    @property
    def Z(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[-1] = 1.0
        return v

    @cached_property
    def J_alpha(self) -> np.ndarray:
        """Complex structure restricted to g_alpha."""
        return self.J[1:-1, 1:-1].copy()

    def alpha_vector(self, coords) -> np.ndarray:
        """Ambient vector with the given g_alpha coordinates."""
        coords = check_vector(coords, self.alpha_dim, "coords")
        v = np.zeros(self.dim)
        v[1:-1] = coords
        return v

    def from_complex(self, z) -> np.ndarray:
        """Ambient vector for a point of C^{n-1} = g_alpha."""
        z = np.asarray(z, dtype=complex)
        if z.shape != (self.n - 1,):
            raise ValueError(f"complex vector must have length {self.n - 1}")
        v = np.zeros(self.dim)
        v[1:-1:2] = z.real
        v[2:-1:2] = z.imag
        return v

    def to_complex(self, v) -> np.ndarray:
        v = check_vector(v, self.dim, "v")
        return v[1:-1:2] + 1j * v[2:-1:2]

    def split(self, v) -> tuple[float, np.ndarray, float]:
        """Decompose ``v = a B + U + c Z`` and return ``(a, U, c)`` with U ambient."""
        v = check_vector(v, self.dim, "v")
        U = v.copy()
        U[0] = 0.0
        U[-1] = 0.0
        return float(v[0]), U, float(v[-1])

    def unitary_to_real(self, W) -> np.ndarray:
        """Real ``(2n-2, 2n-2)`` matrix of a complex ``(n-1, n-1)`` map on g_alpha."""
        W = np.asarray(W, dtype=complex)
        m = self.n - 1
        if W.shape != (m, m):
            raise ValueError(f"expected a ({m}, {m}) complex matrix")
        R = np.zeros((2 * m, 2 * m))
        R[0::2, 0::2] = W.real
        R[0::2, 1::2] = -W.imag
        R[1::2, 0::2] = W.imag
        R[1::2, 1::2] = W.real
        return R


def build_ambient(n: int) -> AmbientModel:
    """Metric Lie algebra of CH^n with holomorphic sectional curvature -1."""
    if int(n) != n or n < 2:
        raise ValueError(f"complex dimension n must be an integer >= 2, got {n}")
    n = int(n)
    d = 2 * n
    zi = d - 1
    C = np.zeros((d, d, d))
    for a in range(1, d - 1):
        C[0, a, a] = 0.5
        C[a, 0, a] = -0.5
    C[0, zi, zi] = 1.0
    C[zi, 0, zi] = -1.0
    for i in range(n - 1):
        x, y = 1 + 2 * i, 2 + 2 * i
        C[x, y, zi] = 1.0
        C[y, x, zi] = -1.0
    J = np.zeros((d, d))
    J[zi, 0] = 1.0
    J[0, zi] = -1.0
    for i in range(n - 1):
        x, y = 1 + 2 * i, 2 + 2 * i
        J[y, x] = 1.0
        J[x, y] = -1.0
    J.setflags(write=False)
    return AmbientModel(n=n, algebra=MetricLieAlgebra(C, label=f"a+n of CH^{n}"), J=J)


def closed_form_connection(model: AmbientModel, x, y) -> np.ndarray:
    """``nabla_x y`` from the explicit Levi-Civita formula of AN.

    For ``x = aB + U + cZ`` and ``y = bB + V + dZ``::

        (<U,V>/2 + cd) B - (bU + cJV + dJU)/2 + (<JU,V>/2 - bc) Z
    """
    _, U, c = model.split(x)
    b, V, d = model.split(y)
    JU = model.J @ U
    JV = model.J @ V
    out = -0.5 * (b * U + c * JV + d * JU)
    out[0] += 0.5 * float(U @ V) + c * d
    out[-1] += 0.5 * float(JU @ V) - b * c
    return out


def nilpotent_part(model: AmbientModel) -> tuple[MetricLieAlgebra, np.ndarray]:
    """The metric Lie algebra n = g_alpha + g_2alpha and its embedding.

    Returns ``(algebra, E)`` where ``E`` has shape ``(2n, 2n-1)`` and maps
    n-coordinates to ambient coordinates.
    """
    E = np.eye(model.dim)[:, 1:]
    C = model.algebra.structure
    Cn = np.einsum("ai,bj,abk,kl->ijl", E, E, C, E)
    return MetricLieAlgebra(Cn, label=f"n of CH^{model.n}"), E
