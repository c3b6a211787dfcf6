# Empty file to make directory a Python package
