try:
    from ._invlab import *  # noqa: F401,F403
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _invlab import *  # noqa: F401,F403
