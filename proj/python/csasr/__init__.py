# Copyright 2026 CSASR Authors
# Apache License 2.0

"""Multilingual / code-switching ASR data preparation and scoring toolkit.

Thin python surface over the C++ core: text normalization, character-space
mapping, word-piece BPE, the acoustic feature pipeline, CTC/CE reference
losses and WER / CMI / transliteration-WER scoring.
"""

try:
    from csasr._csasr import *  # noqa: F401,F403  (installed package layout)
    from csasr import _csasr as _backend  # noqa: F401
except ImportError:  # in-tree layout: module next to the build directory
    from _csasr import *  # noqa: F401,F403
    import _csasr as _backend  # noqa: F401

__all__ = [name for name in dir(_backend) if not name.startswith("_")]
__version__ = "0.1.0"
