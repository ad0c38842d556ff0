"""64-bit FNV-1a content hashing used for reproducible fingerprints."""

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    """Hash ``data`` with the 64-bit FNV-1a function."""
    value = _FNV_OFFSET
    for byte in data:
        value ^= byte
        value = (value * _FNV_PRIME) & _MASK
    return value


def fnv1a64_hex(data: bytes) -> str:
    """FNV-1a digest of ``data`` as a fixed-width 16-char hex string."""
    return format(fnv1a64(data), "016x")
