"""Power moments of generalized quadratic Gauss sums: exact evaluation and verification."""

from .arith import legendre, primitive_root
from .chargroup import character_table
from .charsums import sum_N, sum_S, sum_T
from .config import Config, load_config
from .gauss import gauss_context, generalized_gauss_sum
from .lfun import constant_C, l_one_all
from .moments import exact_moment, moment

__version__ = "0.1.0"
