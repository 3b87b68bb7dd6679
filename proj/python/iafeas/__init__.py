from ._iafeas import *  # noqa: F401,F403
