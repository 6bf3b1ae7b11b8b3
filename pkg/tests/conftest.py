import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

# exact arithmetic is slow per example; no per-example deadline
settings.register_profile("qtorus", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("qtorus")
