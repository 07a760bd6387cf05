"""Number formatting for reports.

CSV cells use Python's shortest round-trip float repr so files re-read
bit-exactly; human-readable tables use fixed 15-significant-digit
scientific notation so CI logs diff cleanly.
"""


def csv_float(x):
    """Shortest decimal string that round-trips to the same float64."""
    return repr(float(x))


def sci15(x):
    """Fixed-width scientific notation with 15 significant digits."""
    return format(float(x), ".14e")
