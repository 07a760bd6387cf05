"""Representation-kind descriptors and name parsing.

A kind selects one (g, f) pair: g maps a rotation to a flat vector of
dimension ``dim`` and f maps such vectors back. The 3D/4D kinds (euler,
quat, unitquat, hemiquat, axisangle, rodriguez) only exist for n=3; the
Gram-Schmidt family is defined for any n >= 2.
"""

from dataclasses import dataclass

from .exceptions import DimensionMismatch, InvalidK, RotkitError

EULER = "euler"
QUATERNION = "quat"
UNIT_QUATERNION = "unitquat"
HEMI_QUATERNION = "hemiquat"
AXIS_ANGLE = "axisangle"
RODRIGUEZ = "rodriguez"
GRAM_SCHMIDT = "gramschmidt"
PROJECTED = "projected"
ORTHOGONAL = "orthogonal"
SIMILARITY = "similarity"
TWO_D = "twod"
MATRIX = "matrix"  # raw n^2 flattening; f orthogonalizes (regression baseline)

_SO3_ONLY = {EULER, QUATERNION, UNIT_QUATERNION, HEMI_QUATERNION, AXIS_ANGLE, RODRIGUEZ}
_SO3_DIMS = {
    EULER: 3,
    QUATERNION: 4,
    UNIT_QUATERNION: 4,
    HEMI_QUATERNION: 4,
    AXIS_ANGLE: 4,
    RODRIGUEZ: 3,
}


@dataclass(frozen=True)
class RepresentationKind:
    tag: str
    n: int = 3
    k: int = 1  # projection count; meaningful only for tag == PROJECTED

    def __post_init__(self):
        if self.n < 2:
            raise DimensionMismatch("group dimension n must be >= 2")
        if self.tag in _SO3_ONLY and self.n != 3:
            raise DimensionMismatch(f"kind {self.tag!r} is defined for n=3 only")
        if self.tag == TWO_D and self.n != 2:
            raise DimensionMismatch("kind 'twod' is defined for n=2 only")
        if self.tag == PROJECTED:
            if not 1 <= self.k <= self.n - 2:
                raise InvalidK(
                    f"projection count k={self.k} outside 1..{self.n - 2} for n={self.n}"
                )
        elif self.tag not in {
            GRAM_SCHMIDT,
            ORTHOGONAL,
            SIMILARITY,
            MATRIX,
        } and self.tag not in _SO3_ONLY and self.tag != TWO_D:
            raise RotkitError(f"unknown representation tag {self.tag!r}")

    @property
    def dim(self):
        n = self.n
        if self.tag in _SO3_DIMS:
            return _SO3_DIMS[self.tag]
        if self.tag == TWO_D:
            return 2
        if self.tag == GRAM_SCHMIDT:
            return n * n - n
        if self.tag == PROJECTED:
            return n * n - n - self.k
        if self.tag == ORTHOGONAL:
            return n * n - n + 1
        if self.tag == SIMILARITY:
            return n * n
        if self.tag == MATRIX:
            return n * n
        raise RotkitError(f"unknown representation tag {self.tag!r}")

    @property
    def label(self):
        """Canonical short name, e.g. 'gs6', 'p5', 'gs_n4', 'proj_n4_k2'."""
        if self.tag == GRAM_SCHMIDT:
            return "gs6" if self.n == 3 else f"gs_n{self.n}"
        if self.tag == PROJECTED:
            if self.n == 3 and self.k == 1:
                return "p5"
            return f"proj_n{self.n}_k{self.k}"
        if self.tag == ORTHOGONAL:
            return "ortho" if self.n == 3 else f"ortho_n{self.n}"
        if self.tag == SIMILARITY:
            return "sim" if self.n == 3 else f"sim_n{self.n}"
        return self.tag


# The six SO(3) rotation kinds trained in the autoencoder benchmark plus the
# continuous 6D/5D pair; see experiments.DEFAULT_KINDS for the default list.
def kind_from_name(name, n=3, k=1):
    """Parse a kind token. Accepts canonical labels ('gs6', 'p5',
    'gs_n4', 'proj_n5_k3', 'euler', ...) plus the generic tokens 'gs' and
    'proj' which take the group dimension from ``n``.
    """
    token = name.strip().lower()
    simple = {
        EULER: (EULER, 3, 1),
        QUATERNION: (QUATERNION, 3, 1),
        UNIT_QUATERNION: (UNIT_QUATERNION, 3, 1),
        HEMI_QUATERNION: (HEMI_QUATERNION, 3, 1),
        AXIS_ANGLE: (AXIS_ANGLE, 3, 1),
        "aa": (AXIS_ANGLE, 3, 1),
        RODRIGUEZ: (RODRIGUEZ, 3, 1),
        "rod": (RODRIGUEZ, 3, 1),
        TWO_D: (TWO_D, 2, 1),
        "gs6": (GRAM_SCHMIDT, 3, 1),
        "p5": (PROJECTED, 3, 1),
    }
    if token in simple:
        tag, nn, kk = simple[token]
        return RepresentationKind(tag, nn, kk)
    if token == "gs":
        return RepresentationKind(GRAM_SCHMIDT, n)
    if token == "proj":
        return RepresentationKind(PROJECTED, n, k)
    if token == "ortho":
        return RepresentationKind(ORTHOGONAL, n)
    if token == "sim":
        return RepresentationKind(SIMILARITY, n)
    if token == MATRIX:
        return RepresentationKind(MATRIX, n)
    if token.startswith("gs_n"):
        return RepresentationKind(GRAM_SCHMIDT, int(token[4:]))
    if token.startswith("ortho_n"):
        return RepresentationKind(ORTHOGONAL, int(token[7:]))
    if token.startswith("sim_n"):
        return RepresentationKind(SIMILARITY, int(token[5:]))
    if token.startswith("proj_n"):
        body = token[6:]
        if "_k" in body:
            ns, ks = body.split("_k", 1)
            return RepresentationKind(PROJECTED, int(ns), int(ks))
        return RepresentationKind(PROJECTED, int(body), 1)
    raise RotkitError(f"unknown representation kind {name!r}")
