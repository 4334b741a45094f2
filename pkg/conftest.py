# Standard Library
import sys
from pathlib import Path

# top-level packages are imported absolutely, as in `python -m tools.hgrid`
sys.path.insert(0, str(Path(__file__).resolve().parent))
