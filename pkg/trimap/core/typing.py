from typing import TypeVar, Union

import numpy as np
import numpy.typing as npt
from typing_extensions import TypeAlias  # TODO: drop once Python 3.9 is not supported anymore


BoolArray: TypeAlias = npt.NDArray[np.bool_]
FloatArray: TypeAlias = npt.NDArray[np.float64]
IntArray: TypeAlias = npt.NDArray[np.int64]
IntOrArray: TypeAlias = Union[int, IntArray]
RealOrArray: TypeAlias = Union[float, npt.NDArray[np.floating]]

InputType = TypeVar("InputType")
OutputType = TypeVar("OutputType")
