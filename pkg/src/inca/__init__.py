"""Incongruity-sensitive random access to compressed texts."""
from .blocktree import bt_access, build_blocktree, build_bt_accessor
from .contract import attractor_from_parse, end_to_end, make_contracting, verify_attractor
from .dspred import PredAnswer, ZFastTrie, two_fattest
from .grammar_access import access, build_accessor
from .parse import Copy, Explicit, Parse, decode, height_profile, min_alpha
from .parse_access import build_parse_accessor, parse_access
from .rlslp import Binary, Rlslp, Run, Terminal, expand, validate
from .text import longest_repeat_at, repeat_profile

__all__ = [
    "bt_access", "build_blocktree", "build_bt_accessor", "attractor_from_parse", "end_to_end",
    "make_contracting", "verify_attractor", "PredAnswer", "ZFastTrie", "two_fattest", "access",
    "build_accessor", "Copy", "Explicit", "Parse", "decode", "height_profile", "min_alpha",
    "build_parse_accessor", "parse_access", "Binary", "Rlslp", "Run", "Terminal", "expand",
    "validate", "longest_repeat_at", "repeat_profile",
]

__version__ = "0.1.0"
