"""Honeycomb lattice on a torus.

The lattice has ``n`` hexagons along each of the two Bravais directions
(``n`` even) and ``N = 2*n**2`` vertices.  A vertex label is a tuple
``(x, y, s)`` with ``0 <= x, y < n`` and sublattice bit ``s`` (0 for the
"empty" sublattice, 1 for the "full" one).  Flat indices use the
sublattice-major layout ``s*n**2 + y*n + x``, so each sublattice is one
contiguous (n, n) block and the momentum-space transforms stay contiguous.

The 3*n**2 edges are covered by three pairwise edge-disjoint tessellations
named "red", "green" and "blue"; each tessellation partitions the vertex
set into n**2 two-vertex cells and drives one local unitary of the walk.
"""

import numpy as np

COLORS = ("red", "green", "blue")

# Geometric embedding with unit edge length: two Bravais vectors plus the
# sublattice offset.  All three cell colors connect vertices at distance 1.
E_X = np.array([np.sqrt(3.0), 0.0])
E_Y = np.array([np.sqrt(3.0) / 2.0, 1.5])
ALPHA = (E_X + E_Y) / 3.0


class HexLattice:
    """Torus-shaped honeycomb lattice with ``N = 2*n**2`` vertices.

    Immutable after construction; derived arrays (cell-swap permutations,
    vertex positions) are computed lazily and cached.
    """

    def __init__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 2 or n % 2 != 0:
            raise ValueError(f"lattice size must be an even integer >= 2, got {n!r}")
        self.n = int(n)
        self.N = 2 * self.n * self.n
        self._perms = {}
        self._positions = None

    def __repr__(self):
        return f"HexLattice(n={self.n})"

    # ------------------------------------------------------------------
    # labels and indices
    # ------------------------------------------------------------------

    def flat_index(self, label):
        """Map a vertex label (x, y, s) to its flat index s*n**2 + y*n + x."""
        x, y, s = label
        n = self.n
        if not (0 <= x < n and 0 <= y < n and s in (0, 1)):
            raise ValueError(f"vertex label {label!r} out of range for n={n}")
        return (s * n + y) * n + x

    def label_of(self, index):
        """Inverse of :meth:`flat_index`."""
        if not (0 <= index < self.N):
            raise ValueError(f"flat index {index!r} out of range for N={self.N}")
        n = self.n
        s, rest = divmod(int(index), n * n)
        y, x = divmod(rest, n)
        return (x, y, s)

    def translate(self, label, shift):
        """Translate a label by (dx, dy) cells, wrapping modulo n."""
        x, y, s = label
        dx, dy = shift
        return ((x + dx) % self.n, (y + dy) % self.n, s)

    # ------------------------------------------------------------------
    # tessellations
    # ------------------------------------------------------------------

    def tessellation(self, color):
        """Return the n**2 two-vertex cells of one tessellation.

        Red pairs (x, y, 1) with (x+1, y, 0), green pairs (x, y, 1) with
        (x, y+1, 0), and blue pairs (x, y, 0) with (x, y, 1), all modulo n.
        """
        n = self.n
        if color == "red":
            return [((x, y, 1), ((x + 1) % n, y, 0)) for y in range(n) for x in range(n)]
        if color == "green":
            return [((x, y, 1), (x, (y + 1) % n, 0)) for y in range(n) for x in range(n)]
        if color == "blue":
            return [((x, y, 0), (x, y, 1)) for y in range(n) for x in range(n)]
        raise ValueError(f"unknown tessellation color {color!r}")

    def swap_permutation(self, color):
        """Involutive index permutation swapping the two vertices of every cell.

        Applying it to a state vector is exactly the action of the
        tessellation reflection (see :mod:`hexwalk.evolution`).
        """
        perm = self._perms.get(color)
        if perm is None:
            n = self.n
            idx = np.arange(self.N)
            x = idx % n
            y = (idx // n) % n
            s = idx // (n * n)
            if color == "red":
                px = np.where(s == 0, (x - 1) % n, (x + 1) % n)
                perm = ((1 - s) * n + y) * n + px
            elif color == "green":
                py = np.where(s == 0, (y - 1) % n, (y + 1) % n)
                perm = ((1 - s) * n + py) * n + x
            elif color == "blue":
                perm = ((1 - s) * n + y) * n + x
            else:
                raise ValueError(f"unknown tessellation color {color!r}")
            self._perms[color] = perm
        return perm

    def neighbors(self, label):
        """The three adjacent vertices, in (red, green, blue) cell order."""
        x, y, s = label
        self.flat_index(label)  # range check
        n = self.n
        if s == 0:
            return (((x - 1) % n, y, 1), (x, (y - 1) % n, 1), (x, y, 1))
        return (((x + 1) % n, y, 0), (x, (y + 1) % n, 0), (x, y, 0))

    # ------------------------------------------------------------------
    # geometry
    # ------------------------------------------------------------------

    def position(self, label):
        """2-D embedding x*e_x + y*e_y + s*alpha, in units of the edge length.

        No wraparound is applied; positions are meaningful for wave packets
        that never reach the periodic boundary.
        """
        x, y, s = label
        self.flat_index(label)  # range check
        return x * E_X + y * E_Y + s * ALPHA

    @property
    def positions(self):
        """(N, 2) array of vertex positions indexed by flat index."""
        if self._positions is None:
            n = self.n
            idx = np.arange(self.N)
            x = (idx % n).astype(float)
            y = ((idx // n) % n).astype(float)
            s = (idx // (n * n)).astype(float)
            self._positions = x[:, None] * E_X + y[:, None] * E_Y + s[:, None] * ALPHA
        return self._positions
