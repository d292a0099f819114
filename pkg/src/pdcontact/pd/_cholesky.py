#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import time

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from ..common import config, utils
from ..common.errors import FactorizationError

try:
    from sksparse.cholmod import CholmodNotPositiveDefiniteError
    from sksparse.cholmod import cholesky as cholmod_cholesky
except ImportError:
    cholmod_cholesky = None

log = utils.get_logger(name="pd", log_level=config.LOG_LEVEL, log_file_path=config.log_file("pd"))

# smallest pivot relative to the largest before a matrix counts as singular
PIVOT_TOLERANCE = 1e-12


class CholeskyFactor:
    """
    Exact sparse factorization of an SPD matrix, H = L L^T.

    Uses CHOLMOD when scikit-sparse is installed, otherwise SuperLU in symmetric mode
    without pivoting, whose pivots are the diagonal of the LDL^T factorization.
    """

    factorizations: int = 0
    backend: str
    size: int

    def __init__(self, matrix: sp.spmatrix, name: str = "H") -> None:
        CholeskyFactor.factorizations += 1
        matrix = sp.csc_matrix(matrix)
        self.size = matrix.shape[0]
        start = time.perf_counter()
        if cholmod_cholesky is not None:
            self.backend = "cholmod"
            try:
                self._factor = cholmod_cholesky(matrix)
            except CholmodNotPositiveDefiniteError as e:
                raise FactorizationError(f"{name} is not positive definite: {e}") from e
            self._solve = self._factor.solve_A
        else:
            self.backend = "superlu"
            try:
                lu = splu(
                    matrix,
                    permc_spec="MMD_AT_PLUS_A",
                    diag_pivot_thresh=0.0,
                    options={"SymmetricMode": True},
                )
            except RuntimeError as e:
                raise FactorizationError(f"{name} is singular: {e}") from e
            pivots = lu.U.diagonal()
            if pivots.size and (pivots.min() <= PIVOT_TOLERANCE * np.abs(pivots).max()):
                raise FactorizationError(f"{name} is not positive definite, smallest pivot {pivots.min():.3e}")
            self._factor = lu
            self._solve = lu.solve
        log.info(
            "factorized %s (%d x %d, nnz %d) with %s in %.1f ms",
            name,
            self.size,
            self.size,
            matrix.nnz,
            self.backend,
            (time.perf_counter() - start) * 1e3,
        )

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """
        Solve H y = rhs for a vector or a block of column vectors.
        """
        rhs = np.asarray(rhs, dtype=np.float64)
        if rhs.shape[0] == 0:
            return rhs.copy()
        return np.asarray(self._solve(rhs)).reshape(rhs.shape)
