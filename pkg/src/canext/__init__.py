"""canext: exact-arithmetic Wahl maps and extensions of canonical curves.

Everything is computed over a word-size prime field with deterministic,
seeded sampling, so every reported number is reproducible from
(curve, prime, seed) and exact over that field.
"""

__version__ = "0.1.0"
