"""
Batch command-line front-end.
"""
from .commands import run
from .parser import build_parser, build_run_config, parse_brackets

__all__ = [
    'run',
    'build_parser',
    'build_run_config',
    'parse_brackets'
]
