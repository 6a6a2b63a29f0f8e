"""DSL texts shared by several test modules."""

# d^2 fails at e5: d(e3*e4) = -e3*e1*e2
BAD_E5 = """\
gen e1 1
gen e2 1
gen e3 1
gen e4 1
gen e5 1
d e4 = e1*e2
d e5 = e3*e4
"""

FILIFORM4 = """\
gen e1 1
gen e2 1
gen e3 1
gen e4 1
d e3 = e1*e2
d e4 = e1*e3
"""

FILIFORM5 = """\
gen e1 1
gen e2 1
gen e3 1
gen e4 1
gen e5 1
d e3 = e1*e2
d e4 = e1*e3
d e5 = e1*e4
"""

HEISENBERG = """\
gen x 1
gen y 1
gen z 1
d z = x*y
"""
