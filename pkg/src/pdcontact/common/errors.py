#!/usr/bin/env python
# -*- coding: UTF-8 -*-


class PdContactError(RuntimeError):
    pass


class MeshFormatError(PdContactError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")


class InvertedElementError(PdContactError):
    def __init__(self, element: int, det: float) -> None:
        message = f"inverted or degenerate element {element}, rest determinant {det:.3e}"
        super().__init__(message)


class EmbeddingError(PdContactError):
    pass


class ActuationError(PdContactError):
    pass


class NonFiniteError(PdContactError):
    def __init__(self, what: str) -> None:
        super().__init__(f"non-finite {what}")


class FactorizationError(PdContactError):
    pass


class DegeneratePrimitiveError(PdContactError):
    pass


class BarrierDomainError(PdContactError):
    def __init__(self, d: float) -> None:
        super().__init__(f"barrier evaluated at non-positive distance {d:.3e}")


class IntersectionError(PdContactError):
    def __init__(self, min_distance: float) -> None:
        super().__init__(f"state is intersecting, minimum surface distance {min_distance:.3e}")


class NotDescentError(PdContactError):
    def __init__(self, slope: float) -> None:
        super().__init__(f"search direction is not a descent direction, slope {slope:.3e}")


class LineSearchStallError(PdContactError):
    def __init__(self, halvings: int, energy: float) -> None:
        message = f"no energy decrease after {halvings} halvings, energy {energy:.6e}"
        super().__init__(message)


class DimensionGuardError(PdContactError):
    def __init__(self, dofs: int, guard: int) -> None:
        super().__init__(f"dense reference refuses {dofs} dofs, guard is {guard}")


class NotSPDError(PdContactError):
    pass


class SingularUpdateError(PdContactError):
    pass


class BarrierSupportError(PdContactError):
    def __init__(self, count: int) -> None:
        super().__init__(f"{count} barrier dofs lie outside the collision-aware block")


class SceneConfigError(PdContactError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
