"""
The Gaussian eye: nested zonoid boundaries
==========================================

The expectation body of c + xi (xi standard Gaussian) is a convex body of
revolution about the mean direction.  As the mean offset s = |c| grows the
body stretches along the axis while its waist stays pinned near the ball of
radius 1/sqrt(2 pi); the nested boundary curves for s = 0, 1, 2, 3 look like
an eye.  This script prints the curves as CSV and sketches them in ASCII.
"""
import numpy as np

from gausszonoids import RevolutionBody, boundary_profile

LEVELS = (0.0, 1.0, 2.0, 3.0)

profiles = {s: boundary_profile(RevolutionBody("gaussian", 2, s), 400) for s in LEVELS}

# one CSV block per level: theta, axial, radial
for s in LEVELS:
    rows = profiles[s]
    print(f"# s = {s}")
    print("theta,axial,radial")
    for theta, ax, rad in rows[:: len(rows) // 8]:
        print(f"{theta:.6f},{ax:.6f},{rad:.6f}")
    print()

# ASCII sketch of the right half-plane (axial >= 0), all levels overlaid
WIDTH, HEIGHT = 64, 25
span_ax = max(abs(profiles[LEVELS[-1]][:, 1]).max(), 0.6)
span_rad = max(profiles[LEVELS[-1]][:, 2].max(), 0.45)
canvas = [[" "] * WIDTH for _ in range(HEIGHT)]
for mark, s in zip("0123", LEVELS):
    for _, ax, rad in profiles[s]:
        for sign in (1.0, -1.0):
            col = int((ax / span_ax * 0.48 + 0.5) * (WIDTH - 1))
            row = int((sign * rad / span_rad * 0.48 + 0.5) * (HEIGHT - 1))
            canvas[row][col] = mark
print("overlayed boundaries (axis horizontal; digits mark s):")
print("\n".join("".join(line) for line in canvas))
