"""
Command-line front end: subcommands, report rendering and plot data
"""

from .commands import COMMANDS, bootstrap_config, metric_config
from .plots import LogAxis, lorenz_rows, lorenz_svg
from .render import FORMATS, format_number, render, render_sections

__all__ = [
    'COMMANDS',
    'bootstrap_config',
    'metric_config',
    'LogAxis',
    'lorenz_rows',
    'lorenz_svg',
    'FORMATS',
    'format_number',
    'render',
    'render_sections',
]
