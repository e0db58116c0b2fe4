"""Stress the pairing equivalence over seeded generator families.

Every field is run through both pairings and the path oracle; the sweep
report would carry a shrunken counterexample if the implementations ever
disagreed.  They never do -- that is the point.
"""

import json

from dynpers import GeneratorSpec, generate, local_minima, sweep, verify_equivalence

# One field in detail first.
spec = GeneratorSpec("gaussian_mixture", (24, 24), seed=42, bumps=5)
field = generate(spec)
print(f"gaussian mixture 24x24, seed 42: {len(local_minima(field))} minima")
report = verify_equivalence(field)
print("single-field report identical:", report.pairings_identical)

# Now a families-by-seed sweep: 1D polynomial+sine reliefs, 2D mixtures,
# and pure noise, under both connectivities.
specs = []
for seed in range(30):
    specs.append(GeneratorSpec("poly_sine_1d", (192,), seed=seed))
    specs.append(GeneratorSpec("uniform_random", (96,), seed=seed))
    specs.append(GeneratorSpec("gaussian_mixture", (16, 16), seed=seed, bumps=4))
    specs.append(
        GeneratorSpec("uniform_random", (16, 16), seed=seed, connectivity="full")
    )

report = sweep(specs, check_oracle=False)
print(json.dumps(report.to_json(), indent=2))

# The oracle triangle is costlier; sample it on the small 2D specs only.
small = [s for s in specs if len(s.shape) == 2][:10]
report = sweep(small, check_oracle=True)
print("oracle-checked sweep on 10 fields:", report.pairings_identical)
