"""
Preset sweeps
=============

The three preset experiments at reduced size.  The full runs (10 seeds,
1000 superframes) are what ``dail run --preset exp1`` does.
"""

from dail.experiments import PRESETS, apply_overrides, format_summary, parse_overrides, run_experiment

small = parse_overrides("superframes = 200")

# McP against the number of WBANs
res = run_experiment(apply_overrides(PRESETS["exp1"], small), seeds=range(3))
print(format_summary(res.rows))

# McP against the superframe length: flat while q stays at 17, then steps down
res = run_experiment(apply_overrides(PRESETS["exp2"], small), seeds=range(3))
for tl, d, s in zip(res.preset.values, res.series("DAIL"), res.series("SMS")):
    print(f"TL={tl:2d}  DAIL {d:.4f}  SMS {s:.4f}")

# power per WBAN
res = run_experiment(apply_overrides(PRESETS["exp3"], small), seeds=range(3))
for n, d, s in zip(res.preset.values, res.series("DAIL", "pc"), res.series("SMS", "pc")):
    print(f"N={n:2d}  DAIL {d * 1e3:.2f}e-3 mW  SMS {s * 1e3:.2f}e-3 mW")
