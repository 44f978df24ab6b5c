# Remember to change also setup.py with the version here
__version__ = "0.1.0"
