from enum import Enum
from fractions import Fraction
from json import JSONEncoder

import numpy as np


class ToolkitJSONEncoder(JSONEncoder):
    """Encode rationals as "p/q" strings and numpy data as plain lists."""
    def default(self, obj):
        if isinstance(obj, Fraction):
            return f"{obj.numerator}/{obj.denominator}"
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, Enum):
            return obj.value
        if hasattr(obj, 'to_dict'):
            return obj.to_dict()
        return super().default(obj)
