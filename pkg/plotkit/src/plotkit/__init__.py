"""Annotated log-log plots for the rapid-decay workbench CSV outputs.

This package deliberately recomputes every fit from the raw CSV instead
of trusting the JSON sidecars, so a rendered slope doubles as an
independent cross-check of the producing tool."""

__version__ = "0.1.0"

from .csvio import SchemaMismatch, read_table
from .fitting import loglog_slope
