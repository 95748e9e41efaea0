"""Two structural facts about tandem lines, demonstrated numerically.

First: interior buffers only ever help, with diminishing returns — the
saturation rate climbs toward the bottleneck rate as capacity grows.
Second: reversing the order of the servers leaves the saturation rate
unchanged when all buffers share one capacity, even though the stationary
phase distribution itself changes. Run with:
python demos/04_buffer_gains_and_symmetry.py
"""

from tandemqbd import lambda_max, validate_config

rates = [0.9, 1.4, 1.1]
print(f"line rates {rates}: saturation rate vs shared buffer capacity")
print("capacity,M,lambda_max")
for capacity in range(8):
    report = lambda_max(validate_config(rates, [capacity] * 2))
    print(f"{capacity},{report.num_phases},{report.lambda_max:.9f}")
print(f"bottleneck rate (unreachable for any finite capacity): {min(rates)}")

print("\nreversal symmetry with homogeneous buffers:")
for rates in ([0.9, 1.4, 1.1], [0.5, 2.0, 1.0, 0.8]):
    forward = lambda_max(validate_config(rates, [1] * (len(rates) - 1)))
    backward = lambda_max(validate_config(rates[::-1], [1] * (len(rates) - 1)))
    print(
        f"  {rates} -> {forward.lambda_max:.9f}   "
        f"reversed -> {backward.lambda_max:.9f}"
    )
