"""Complex number text form shared by every JSON interface.

Accepted literals: ``a``, ``bi``, ``a+bi``, ``a-bi`` with decimal reals, plus
bare ``i`` / ``-i``. Output uses the shortest round-trip decimal of each part,
so identical values always print identically.
"""

import math
import re

from .errors import InvalidInput

_BARE_I = re.compile(r"^([+-]?)i$")


def parse_complex(text):
    if isinstance(text, bool):
        raise InvalidInput(f"not a complex literal: {text!r}")
    if isinstance(text, (int, float)):
        value = complex(text)
    elif isinstance(text, str):
        s = text.strip().replace(" ", "")
        m = _BARE_I.match(s)
        if m:
            value = complex(0.0, -1.0 if m.group(1) == "-" else 1.0)
        elif "j" in s.lower() or not s:
            raise InvalidInput(f"not a complex literal: {text!r}")
        else:
            s = re.sub(r"(?<=[+-])i$", "1i", s)
            try:
                value = complex(s.replace("i", "j"))
            except ValueError:
                raise InvalidInput(f"not a complex literal: {text!r}") from None
    else:
        raise InvalidInput(f"not a complex literal: {text!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InvalidInput(f"non-finite complex literal: {text!r}")
    return value


def parse_real(text):
    value = parse_complex(text)
    if value.imag != 0.0:
        raise InvalidInput(f"expected a real number, got {text!r}")
    return value.real


def format_real(x):
    x = float(x)
    if x == 0.0:
        return "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_complex(z):
    z = complex(z)
    re_, im = z.real, z.imag
    if im == 0.0:
        return format_real(re_)
    im_txt = format_real(abs(im)) + "i"
    if re_ == 0.0:
        return ("-" if im < 0 else "") + im_txt
    return format_real(re_) + ("-" if im < 0 else "+") + im_txt
