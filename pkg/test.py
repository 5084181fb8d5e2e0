import xinner
from xinner.examples.fixtures import load_example

# Load the quantum Weyl algebra bundled with the package
weyl = load_example("weyl.qalg")

# Normal form of x*y
print(weyl.element("x*y"))

# Search an inner witness for the Ore derivation
print(xinner.xinner_derivation_solve(weyl, box=1).element)
