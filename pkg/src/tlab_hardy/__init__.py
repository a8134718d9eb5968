__version__ = "0.1.0"

from . import analytic_fn, hardy_norms, quadrature, singular_quad, toeplitz, utils
from .abstract import CoefficientFamily as CoefficientFamily
from .analytic_fn import TaylorPoly as TaylorPoly
from .analytic_fn import UnitComplex as UnitComplex
from .analytic_fn import from_spec as from_spec
from .errors import DomainError as DomainError
from .errors import HardyError as HardyError
from .errors import QuadratureError as QuadratureError
from .errors import SpecError as SpecError
from .extremal import SearchConfig as SearchConfig
from .extremal import SearchState as SearchState
from .extremal import search as search
from .hardy_norms import NormReport as NormReport
from .quadrature import QuadConfig as QuadConfig
from .quadrature import QuadResult as QuadResult
from .records import VerifyRecord as VerifyRecord
from .toeplitz import ToeplitzApplication as ToeplitzApplication
