#!/usr/bin/env python3
"""Writes a synthetic coffee-shop transaction log in the ingestion schema.

One month of point-of-sale records (date,time,x,y,shop_id) for a single
branch, roughly 560 per day, spread over the opening hours of the
experiment day. Positions are uniform over the shop floor disk.
"""

import argparse
import calendar
import csv
import math
import random


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True)
    parser.add_argument("--seed", type=int, default=2019)
    parser.add_argument("--year", type=int, default=2019)
    parser.add_argument("--month", type=int, default=4)
    parser.add_argument("--per-day", type=int, default=561)
    parser.add_argument("--radius", type=float, default=5.0)
    parser.add_argument("--shop-id", default="3")
    parser.add_argument("--open", default="09:00")
    parser.add_argument("--close", default="17:00")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    open_min = int(args.open[:2]) * 60 + int(args.open[3:])
    close_min = int(args.close[:2]) * 60 + int(args.close[3:])
    days = calendar.monthrange(args.year, args.month)[1]

    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "time", "x", "y", "shop_id"])
        for day in range(1, days + 1):
            count = max(0, round(rng.gauss(args.per_day, 25)))
            minutes = sorted(rng.randrange(open_min, close_min) for _ in range(count))
            for m in minutes:
                r = args.radius * math.sqrt(rng.random())
                theta = 2 * math.pi * rng.random()
                writer.writerow([
                    f"{args.year:04d}-{args.month:02d}-{day:02d}",
                    f"{m // 60:02d}:{m % 60:02d}",
                    f"{r * math.cos(theta):.3f}",
                    f"{r * math.sin(theta):.3f}",
                    args.shop_id,
                ])


if __name__ == "__main__":
    main()
