/**
 * Shared test fixtures: a fake socket standing in for the WebSocket, plus
 * feedback builders and a four-object scene whose constraint rows match the
 * service's CSV export for the same layout.
 */

import { SocketLike } from "../src/channel";
import {
  Command,
  Feedback,
  FeedbackPayload,
  ObjectSnapshot,
  PlaneSnapshot,
  SceneSnapshot,
  StatementRow,
  statementText,
} from "../src/protocol";

export class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onmessage: ((event: { data: string }) => void) | null = null;
  onclose: (() => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
    this.onclose?.();
  }

  /** Push one frame to the channel as if the server had sent it. */
  receive(frame: object): void {
    this.onmessage?.({ data: JSON.stringify(frame) });
  }

  receiveRaw(data: string): void {
    this.onmessage?.({ data });
  }

  sentCommands(): Command[] {
    return this.sent.map((raw) => JSON.parse(raw) as Command);
  }

  lastCommand(): Command {
    if (this.sent.length === 0) {
      throw new Error("no frames were sent");
    }
    return JSON.parse(this.sent[this.sent.length - 1]) as Command;
  }

  /** Answer the most recent outbound command with an ok feedback. */
  answerOk(revision: number, payload: FeedbackPayload = {}): Feedback {
    const feedback = okFeedback(this.lastCommand().request_id, revision, payload);
    this.receive(feedback);
    return feedback;
  }

  answerError(revision: number, code: string, message: string): Feedback {
    const feedback = errorFeedback(this.lastCommand().request_id, revision, code, message);
    this.receive(feedback);
    return feedback;
  }
}

export function okFeedback(
  requestId: string | null,
  revision: number,
  payload: FeedbackPayload = {},
): Feedback {
  return { request_id: requestId, outcome: "ok", revision, payload };
}

export function errorFeedback(
  requestId: string | null,
  revision: number,
  code: string,
  message: string,
): Feedback {
  return { request_id: requestId, outcome: "error", revision, error: { code, message } };
}

export function plane(id: string, orientation: "vertical" | "horizontal", objects: string[]): PlaneSnapshot {
  return {
    id,
    orientation,
    origin: [0, 0, 0],
    u_axis: orientation === "vertical" ? [1, 0, 0] : [1, 0, 0],
    extent_u: 4,
    extent_v: orientation === "vertical" ? 2.5 : 4,
    objects,
  };
}

export function object(
  id: string,
  kind: string,
  hostPlane: string,
  position: [number, number, number],
  scale = 1.0,
): ObjectSnapshot {
  return { id, kind, position, scale, yaw: 0, host_plane: hostPlane };
}

/** Wall clock + window sharing a wall, two desk-chair pairs on the floor. */
export function classroomScene(revision: number): SceneSnapshot {
  return {
    revision,
    planes: [plane("p1", "vertical", ["c1", "w1"]), plane("p2", "horizontal", ["d1", "d2"])],
    objects: [
      object("c1", "clock", "p1", [1.0, 2.0, 0.0]),
      object("d1", "desk_chair", "p2", [1.0, 0.0, 1.0]),
      object("d2", "desk_chair", "p2", [2.5, 0.0, 1.0]),
      object("w1", "window", "p1", [1.0, 1.2, 0.0]),
    ],
  };
}

export const CLASSROOM_STATEMENTS: StatementRow[] = [
  { constraint_type: "attach_vertical", subject: "c1", target: null },
  { constraint_type: "attach_vertical", subject: "w1", target: null },
  { constraint_type: "attach_horizontal", subject: "d1", target: null },
  { constraint_type: "attach_horizontal", subject: "d2", target: null },
  { constraint_type: "same_vertical_plane", subject: "c1", target: "w1" },
  { constraint_type: "same_horizontal_plane", subject: "d1", target: "d2" },
  { constraint_type: "align_x", subject: "c1", target: "w1" },
  { constraint_type: "align_y", subject: "d1", target: "d2" },
  { constraint_type: "align_z", subject: "c1", target: "w1" },
  { constraint_type: "align_z", subject: "d1", target: "d2" },
];

export const CLASSROOM_CSV =
  "constraint_type,subject,target\n" +
  CLASSROOM_STATEMENTS.map((row) => statementText(row)).join("\n") +
  "\n";
