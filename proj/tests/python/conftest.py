import os
import sys

# The extension and the pure-python package are imported straight from the
# build and source trees; ctest sets both environment variables.
build_dir = os.environ.get("SUPERLIN_BUILD_DIR")
if build_dir:
    sys.path.insert(0, build_dir)

source_dir = os.environ.get("SUPERLIN_SOURCE_DIR")
if source_dir:
    sys.path.insert(0, os.path.join(source_dir, "python"))
