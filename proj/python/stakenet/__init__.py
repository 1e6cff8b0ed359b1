from ._stakenet import *  # noqa: F401,F403
