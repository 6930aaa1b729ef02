# Tests Package 