# flake8: noqa F401, F403
from .engine import *
from .forest import *
from .rules import *
