/** FIFO mutation queue: at most one in-flight request per document.
 *
 * Every UI mutation goes through `enqueue`, so rapid clicks serialize
 * into the order the user produced them and each re-render reflects the
 * server response to exactly one mutation.
 */

export class MutationQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private pendingCount = 0;

  get pending(): number {
    return this.pendingCount;
  }

  enqueue<T>(task: () => Promise<T>): Promise<T> {
    this.pendingCount += 1;
    const run = this.tail.then(task, task);
    // Callers get the task's own result/rejection; the internal tail
    // swallows it so one failure never stalls the queue or leaks an
    // unhandled rejection.
    this.tail = run.then(
      () => {
        this.pendingCount -= 1;
      },
      () => {
        this.pendingCount -= 1;
      },
    );
    return run;
  }

  /** Resolves once everything queued so far has settled. */
  async idle(): Promise<void> {
    while (this.pendingCount > 0) {
      await this.tail.catch(() => undefined);
    }
  }
}
