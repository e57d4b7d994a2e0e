"""Backend selection for the integer polynomial kernels.

The compiled extension is used when it was built; ``QZALG_PURE=1`` forces
the pure-Python fallback (used by the benchmark and the parity tests).
"""

import os

BACKEND = "python"

if os.environ.get("QZALG_PURE", "") not in ("1", "true", "yes"):
    try:
        from qzalg._polykern_c import (  # noqa: F401
            ladd, lmul, padd, pcontent, pdivexact, peval, pgcd, pmul, pneg, pscale,
            pshift, psub, ptrydiv, strip_low, trim,
        )
        BACKEND = "compiled"
    except ImportError:
        pass

if BACKEND == "python":
    from qzalg._polykern import (  # noqa: F401
        ladd, lmul, padd, pcontent, pdivexact, peval, pgcd, pmul, pneg, pscale,
        pshift, psub, ptrydiv, strip_low, trim,
    )
