"""
Family literals.

    {"n": 4, "sets": ["1100", "0011"]}    character i-1 is coordinate i
    {"n": 4, "mask_hex": "c0"}            the membership mask in hex

Both forms are parsed and emitted bit-exactly.
"""

import json
import logging
from pathlib import Path

from .exceptions import DimensionError, FamilyFormatError
from .family import SetFamily, check_dimension

logger = logging.getLogger(__name__)


def subset_to_bits(index: int, n: int) -> str:
    # coordinate 1 is the most significant bit, so the binary spelling is the bit string
    return format(index, f"0{n}b") if n else ""


def family_to_literal(family: SetFamily, form: str = "sets") -> dict:
    if form == "sets":
        return {"n": family.n, "sets": [subset_to_bits(p, family.n) for p in family.positions()]}
    if form == "mask_hex":
        width = max(1, (family.universe + 3) // 4)
        return {"n": family.n, "mask_hex": format(family.mask, f"0{width}x")}
    raise FamilyFormatError(f"unknown literal form {form!r}")


def family_from_literal(literal) -> SetFamily:
    if isinstance(literal, (str, bytes)):
        try:
            literal = json.loads(literal)
        except json.JSONDecodeError as e:
            raise FamilyFormatError(f"family literal is not valid JSON: {e}") from e
    if not isinstance(literal, dict) or "n" not in literal:
        raise FamilyFormatError('family literal must be an object with an "n" field')

    n = literal["n"]
    try:
        check_dimension(n)
    except DimensionError as e:
        raise FamilyFormatError(str(e)) from e

    has_sets, has_hex = "sets" in literal, "mask_hex" in literal
    if has_sets == has_hex:
        raise FamilyFormatError('family literal needs exactly one of "sets" or "mask_hex"')

    if has_hex:
        text = literal["mask_hex"]
        try:
            mask = int(text, 16)
        except (TypeError, ValueError) as e:
            raise FamilyFormatError(f"mask_hex {text!r} is not hexadecimal") from e
        return SetFamily(n, mask)

    mask = 0
    for bits in literal["sets"]:
        if not isinstance(bits, str) or len(bits) != n or set(bits) - {"0", "1"}:
            raise FamilyFormatError(f"set {bits!r} is not a {n}-character 0/1 string")
        position = int(bits, 2) if n else 0
        if mask >> position & 1:
            raise FamilyFormatError(f"set {bits!r} listed twice")
        mask |= 1 << position
    return SetFamily(n, mask)


def load_family_file(path) -> SetFamily:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        logger.warning(f"⚠️ Could not read family file {path}: {e}")
        raise FamilyFormatError(f"cannot read family file {path}: {e}") from e
    return family_from_literal(text)
