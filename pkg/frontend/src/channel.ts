/**
 * The session channel: one WebSocket-shaped transport carrying command
 * frames out and feedback frames back.  At most one mutating command is in
 * flight at a time; later mutations queue so feedback revisions arrive in
 * order.  Reads (generate/export/snapshot/solve) pass through freely.
 */

import { Command, Feedback, isFeedback, isMutating, parseFrame } from "./protocol";

/** The subset of WebSocket the channel needs; tests substitute a fake. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
}

export type CommandSpec =
  | Omit<Command, "request_id">
  | Command; // a caller may pre-assign its own request id

interface Pending {
  command: Command;
  resolve: (feedback: Feedback) => void;
  reject: (error: Error) => void;
}

export class SessionChannel {
  sessionId: string | null = null;

  /** Observers: every feedback frame, in arrival order. */
  onFeedback: ((feedback: Feedback) => void) | null = null;
  onSessionOpen: ((sessionId: string) => void) | null = null;
  onClose: (() => void) | null = null;

  private socket: SocketLike;
  private serial = 0;
  private inFlightMutation: Pending | null = null;
  private mutationQueue: Pending[] = [];
  private awaiting = new Map<string, Pending>();
  private closed = false;

  constructor(socket: SocketLike) {
    this.socket = socket;
    socket.onmessage = (event) => this.handleFrame(event.data);
    socket.onclose = () => {
      this.closed = true;
      const pending = [this.inFlightMutation, ...this.mutationQueue, ...this.awaiting.values()];
      this.inFlightMutation = null;
      this.mutationQueue = [];
      this.awaiting.clear();
      for (const entry of pending) {
        entry?.reject(new Error("channel closed"));
      }
      this.onClose?.();
    };
  }

  nextRequestId(): string {
    this.serial += 1;
    return `u${this.serial}`;
  }

  send(spec: CommandSpec): Promise<Feedback> {
    if (this.closed) {
      return Promise.reject(new Error("channel closed"));
    }
    const command = (
      "request_id" in spec && spec.request_id ? spec : { ...spec, request_id: this.nextRequestId() }
    ) as Command;
    return new Promise<Feedback>((resolve, reject) => {
      const pending: Pending = { command, resolve, reject };
      if (isMutating(command) && this.inFlightMutation !== null) {
        this.mutationQueue.push(pending);
        return;
      }
      this.transmit(pending);
    });
  }

  /** True while a mutating command awaits its feedback (tests peek at this). */
  get busy(): boolean {
    return this.inFlightMutation !== null;
  }

  get queuedMutations(): number {
    return this.mutationQueue.length;
  }

  close(): void {
    this.socket.close();
  }

  private transmit(pending: Pending): void {
    if (isMutating(pending.command)) {
      this.inFlightMutation = pending;
    }
    this.awaiting.set(pending.command.request_id, pending);
    this.socket.send(JSON.stringify(pending.command));
  }

  private handleFrame(raw: string): void {
    let frame;
    try {
      frame = parseFrame(raw);
    } catch {
      return; // unreadable frames carry nothing actionable
    }
    if (!isFeedback(frame)) {
      if (frame.event === "session_opened" && frame.session_id) {
        this.sessionId = frame.session_id;
        this.onSessionOpen?.(frame.session_id);
      }
      return;
    }
    this.onFeedback?.(frame);
    const pending = frame.request_id ? this.awaiting.get(frame.request_id) : undefined;
    if (pending) {
      this.awaiting.delete(pending.command.request_id);
      if (pending === this.inFlightMutation) {
        this.inFlightMutation = null;
        const next = this.mutationQueue.shift();
        if (next) {
          this.transmit(next);
        }
      }
      pending.resolve(frame);
    }
  }
}
