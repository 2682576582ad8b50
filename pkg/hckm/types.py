"""Shared enums and type aliases."""

from enum import Enum

import numpy as np
from numpy.typing import NDArray

# (d,) for a single point, (n, d) for a point set
FloatArray = NDArray[np.float64]
IntArray = NDArray[np.int64]


class Metric(str, Enum):
    D = "d"  # squared Euclidean
    H = "h"  # routed through the representing set


class DatasetFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
