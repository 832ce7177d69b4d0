"""Social learning over agent networks under inferential attacks.

Thin wrapper over the compiled extension; every operation lives in
``slsim._core`` and is re-exported here.
"""

from slsim._core import *  # noqa: F401,F403
from slsim._core import __doc__  # noqa: F401

__version__ = "0.1.0"
