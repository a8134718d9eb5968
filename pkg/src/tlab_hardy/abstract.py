import abc
import dataclasses
import typing as t

import numpy as np
import numpy.typing as npt

from . import analytic_fn

Params = npt.NDArray[np.float64]


@dataclasses.dataclass(frozen=True)  # type: ignore[misc]
class CoefficientFamily(abc.ABC):
    """
    Abstract class for real-parameterized families of polynomials.
    """

    @property
    @abc.abstractmethod
    def name(self) -> str:
        """
        The name of the family used in reports.
        """

    @property
    @abc.abstractmethod
    def dimension(self) -> int:
        """
        The number of real parameters.
        """

    @abc.abstractmethod
    def start(self) -> Params:
        """
        Gets the starting point of a search.

        Returns
        -------
        numpy.ndarray
            A vector of length `dimension`.
        """

    @abc.abstractmethod
    def coefficients(self, params: Params) -> tuple[complex, ...]:
        """
        Maps parameters to Taylor coefficients.

        Parameters
        ----------
        params : numpy.ndarray
            A vector of length `dimension`.

        Returns
        -------
        tuple[complex, ...]
            Coefficients ``a_0, a_1, ...``.
        """

    def polynomial(self, params: t.Any) -> analytic_fn.TaylorPoly:
        """
        The member of the family at ``params``.
        """
        vector = np.asarray(params, dtype=np.float64)
        if vector.shape != (self.dimension,):
            raise ValueError(
                f"{self.name} expects {self.dimension} parameters, got {vector.shape}"
            )
        return analytic_fn.TaylorPoly(self.coefficients(vector))
