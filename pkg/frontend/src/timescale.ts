/** Affine, invertible mapping between media time (ms) and pixels.
 *
 * `px = (ms - originMs) * pxPerMs`.  All view geometry goes through one
 * TimeScale instance so zooming and panning stay consistent across the
 * timeline, density strip and playhead.
 */

export class TimeScale {
  constructor(
    public readonly originMs: number,
    public readonly pxPerMs: number,
  ) {
    if (!(pxPerMs > 0) || !Number.isFinite(pxPerMs)) {
      throw new RangeError(`pxPerMs must be finite and positive, got ${pxPerMs}`);
    }
    if (!Number.isFinite(originMs)) {
      throw new RangeError(`originMs must be finite, got ${originMs}`);
    }
  }

  toPx(ms: number): number {
    return (ms - this.originMs) * this.pxPerMs;
  }

  toMs(px: number): number {
    return px / this.pxPerMs + this.originMs;
  }

  /** Width in pixels of a duration in ms (origin-independent). */
  spanPx(durationMs: number): number {
    return durationMs * this.pxPerMs;
  }

  /** New scale zoomed by `factor`, keeping the time under `anchorPx`
   * at the same pixel. */
  zoomAround(anchorPx: number, factor: number): TimeScale {
    if (!(factor > 0) || !Number.isFinite(factor)) {
      throw new RangeError(`zoom factor must be finite and positive, got ${factor}`);
    }
    const anchorMs = this.toMs(anchorPx);
    const pxPerMs = this.pxPerMs * factor;
    return new TimeScale(anchorMs - anchorPx / pxPerMs, pxPerMs);
  }

  /** New scale shifted right by `dPx` pixels (content moves left). */
  pan(dPx: number): TimeScale {
    return new TimeScale(this.originMs + dPx / this.pxPerMs, this.pxPerMs);
  }

  /** Scale fitting [beginMs, endMs] into widthPx pixels. */
  static fit(beginMs: number, endMs: number, widthPx: number): TimeScale {
    const span = Math.max(1, endMs - beginMs);
    return new TimeScale(beginMs, widthPx / span);
  }
}
