#!/usr/bin/env python3
# Copyright 2026 The badapt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plot a trajectory.csv written by `badapt run` or `badapt compare`."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def columns(df, prefix):
    return [c for c in df.columns if c.startswith(prefix)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+", help="trajectory CSV files (overlaid)")
    ap.add_argument("-o", "--output", default="trajectory.png")
    args = ap.parse_args()

    fig, axes = plt.subplots(4, 1, figsize=(9, 11), sharex=True)
    for path in args.csv:
        df = pd.read_csv(path)
        label = path.rsplit("/", 1)[-1]
        e = df[columns(df, "e_")].pow(2).sum(axis=1).pow(0.5)
        tt = df[columns(df, "theta_tilde_")].pow(2).sum(axis=1).pow(0.5)
        axes[0].semilogy(df["t"], e, label=label)
        axes[1].semilogy(df["t"], tt, label=label)
        axes[2].plot(df["t"], df["min_margin"], label=label)
        axes[3].semilogy(df["t"], df["V"].clip(lower=1e-300), label=label)

    axes[0].set_ylabel("||e||")
    axes[1].set_ylabel("||theta_tilde||")
    axes[2].set_ylabel("min margin")
    axes[2].axhline(0.0, color="k", lw=0.5)
    axes[3].set_ylabel("V")
    axes[3].set_xlabel("t [s]")
    axes[0].legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.output, dpi=120)


if __name__ == "__main__":
    main()
