/** Playback synchronization between the media element and the viewers.
 *
 * The media element's clock is authoritative: clicking the timeline
 * seeks the media, and every `timeupdate` pushes a fresh playhead to the
 * render callback synchronously, so highlight changes land in the same
 * frame as the event that caused them.
 */

import { TimeScale } from "./timescale.js";

/** The subset of HTMLMediaElement the sync layer needs; tests provide a
 * fake with a scriptable clock. */
export interface MediaLike {
  /** Seconds, like HTMLMediaElement. */
  currentTime: number;
  duration: number;
  paused: boolean;
  play(): void;
  pause(): void;
  addEventListener(type: string, handler: () => void): void;
}

export class PlaybackSync {
  private playheadMs = 0;

  constructor(
    private readonly media: MediaLike,
    private readonly onPlayhead: (playheadMs: number, durationMs: number | null) => void,
  ) {
    media.addEventListener("timeupdate", () => this.pull());
    media.addEventListener("durationchange", () => this.pull());
    media.addEventListener("seeked", () => this.pull());
  }

  get playhead(): number {
    return this.playheadMs;
  }

  get durationMs(): number | null {
    return Number.isFinite(this.media.duration) ? this.media.duration * 1000 : null;
  }

  /** Seek the media; the playhead follows from the media clock. */
  seekMs(ms: number): void {
    const bounded = Math.max(0, this.durationMs === null ? ms : Math.min(ms, this.durationMs));
    this.media.currentTime = bounded / 1000;
    this.pull();
  }

  /** Timeline click: pixel -> time -> seek. */
  clickTimeline(px: number, scale: TimeScale): void {
    this.seekMs(scale.toMs(px));
  }

  toggle(): void {
    if (this.media.paused) {
      this.media.play();
    } else {
      this.media.pause();
    }
  }

  private pull(): void {
    this.playheadMs = this.media.currentTime * 1000;
    this.onPlayhead(this.playheadMs, this.durationMs);
  }
}
