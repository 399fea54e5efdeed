# cython: language_level=3
# Compiled build of the pure-Python kernel; the source is shared verbatim.
include "_kernel.py"
