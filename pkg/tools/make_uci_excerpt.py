"""Regenerate src/cldp/data/household_power_excerpt.txt.

Writes 1000 minute-resolution rows in the UCI household power layout. The
first row is the dataset's real first reading; the rest are a seeded
synthetic continuation. Every 83rd row is a missing reading (``?``).
"""

import datetime as dt
from pathlib import Path

import numpy as np

HEADER = ("Date;Time;Global_active_power;Global_reactive_power;Voltage;"
          "Global_intensity;Sub_metering_1;Sub_metering_2;Sub_metering_3")
FIRST = "16/12/2006;17:24:00;4.216;0.418;234.840;18.400;0.000;1.000;17.000"
ROWS = 1000
MISSING_EVERY = 83

OUT = Path(__file__).resolve().parents[1] / "src" / "cldp" / "data" / "household_power_excerpt.txt"


def main():
    rng = np.random.default_rng(20061216)
    t = dt.datetime(2006, 12, 16, 17, 24)
    lines = [HEADER, FIRST]
    power = 4.216
    for n in range(1, ROWS):
        t += dt.timedelta(minutes=1)
        date = f"{t.day}/{t.month}/{t.year}"
        clock = t.strftime("%H:%M:%S")
        if n % MISSING_EVERY == 0:
            lines.append(f"{date};{clock};?;?;?;?;?;?;")
            continue
        power = float(np.clip(power + rng.normal(0, 0.15), 0.076, 7.0))
        reactive = abs(rng.normal(0.12, 0.08))
        volt = rng.normal(240.0, 3.0)
        amps = power * 1000 / volt
        subs = rng.integers(0, 3, size=3) * [1, 1, 17]
        lines.append(
            f"{date};{clock};{power:.3f};{reactive:.3f};{volt:.3f};{amps:.3f};"
            f"{subs[0]:.3f};{subs[1]:.3f};{subs[2]:.3f}"
        )
    OUT.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
