/**
 * Wire types for the session protocol: JSON command frames tagged by `op`,
 * answered by Feedback envelopes.  These mirror the service's models; the
 * editor never invents constraint data on its own.
 */

export type Vec3Tuple = [number, number, number];
export type Orientation = "vertical" | "horizontal";
export type StructureKind = "wall" | "floor";
export type ItemKind = "clock" | "window" | "desk_chair";
export type ObjectKind = StructureKind | ItemKind;

export interface AddPlaneCommand {
  request_id: string;
  op: "add_plane";
  orientation: Orientation;
  origin: Vec3Tuple;
  u_axis: Vec3Tuple;
  extent_u: number;
  extent_v: number;
}

export interface AddObjectCommand {
  request_id: string;
  op: "add_object";
  kind: ItemKind;
  position: Vec3Tuple;
}

export interface MoveObjectCommand {
  request_id: string;
  op: "move_object";
  id: string;
  position: Vec3Tuple;
}

export interface ScaleObjectCommand {
  request_id: string;
  op: "scale_object";
  id: string;
  factor: number;
}

export interface RemoveObjectCommand {
  request_id: string;
  op: "remove_object";
  id: string;
}

export interface GenerateCommand {
  request_id: string;
  op: "generate";
}

export interface ExportCommand {
  request_id: string;
  op: "export";
}

export interface SolveCommand {
  request_id: string;
  op: "solve";
  environment_ref: string;
  cap?: number | null;
}

export interface SnapshotSceneCommand {
  request_id: string;
  op: "snapshot_scene";
}

export type Command =
  | AddPlaneCommand
  | AddObjectCommand
  | MoveObjectCommand
  | ScaleObjectCommand
  | RemoveObjectCommand
  | GenerateCommand
  | ExportCommand
  | SolveCommand
  | SnapshotSceneCommand;

export type CommandOp = Command["op"];

const MUTATING_OPS = new Set<CommandOp>([
  "add_plane",
  "add_object",
  "move_object",
  "scale_object",
  "remove_object",
]);

export function isMutating(command: Command): boolean {
  return MUTATING_OPS.has(command.op);
}

export interface StatementRow {
  constraint_type: string;
  subject: string;
  target: string | null;
}

/** One panel/CSV row without the header, e.g. `align_x,c1,w1` or `attach_vertical,c1,`. */
export function statementText(row: StatementRow): string {
  return `${row.constraint_type},${row.subject},${row.target ?? ""}`;
}

export interface ObjectSnapshot {
  id: string;
  kind: string;
  position: Vec3Tuple;
  scale: number;
  yaw: number;
  host_plane: string;
}

export interface PlaneSnapshot {
  id: string;
  orientation: Orientation;
  origin: Vec3Tuple;
  u_axis: Vec3Tuple;
  extent_u: number;
  extent_v: number;
  objects: string[];
}

export interface SceneSnapshot {
  revision: number;
  planes: PlaneSnapshot[];
  objects: ObjectSnapshot[];
}

export const EMPTY_SCENE: SceneSnapshot = { revision: 0, planes: [], objects: [] };

export interface SolveReportPayload {
  exhausted: boolean;
  evaluated_count: number;
  candidates: Record<string, [string, Vec3Tuple]>[];
}

export interface FeedbackPayload {
  scene?: SceneSnapshot | null;
  statements?: StatementRow[] | null;
  csv?: string | null;
  report?: SolveReportPayload | null;
  plane_id?: string | null;
  object_id?: string | null;
}

export interface FeedbackError {
  code: string;
  message: string;
}

export interface Feedback {
  request_id: string | null;
  outcome: "ok" | "error";
  revision: number;
  error?: FeedbackError | null;
  payload?: FeedbackPayload | null;
}

/** Out-of-band frames the channel can emit (e.g. on auto-open). */
export interface ChannelEvent {
  event: string;
  session_id?: string;
  revision?: number;
  message?: string;
}

export type Frame = Feedback | ChannelEvent;

export function parseFrame(raw: string): Frame {
  const data: unknown = JSON.parse(raw);
  if (typeof data !== "object" || data === null) {
    throw new Error("frame is not an object");
  }
  if ("event" in data) {
    return data as ChannelEvent;
  }
  const frame = data as Feedback;
  if (frame.outcome !== "ok" && frame.outcome !== "error") {
    throw new Error("frame has no outcome");
  }
  return frame;
}

export function isFeedback(frame: Frame): frame is Feedback {
  return !("event" in frame);
}
