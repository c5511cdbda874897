"""Tile-level temperature and power monitor emulation."""

from ._tpmon import *  # noqa: F401,F403
