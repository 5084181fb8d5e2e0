"""
xinner Examples

Presentations of the worked examples as .qalg files, the registry of
their expected values, and runnable demo scripts.
"""
