/**
 * Editor state: the current edit mode, palette/object selection, and the
 * server-authoritative scene + constraint list.  Constraint rows only ever
 * arrive through Feedback payloads; nothing here computes constraints.
 */

import {
  CommandOp,
  EMPTY_SCENE,
  Feedback,
  ObjectKind,
  SceneSnapshot,
  StatementRow,
} from "./protocol";

export type EditMode = "default" | "move" | "scale" | "remove";

export const EDIT_MODES: readonly EditMode[] = ["default", "move", "scale", "remove"];

export const SCALE_MIN = 0.5;
export const SCALE_MAX = 2.0;

export type PaletteGroup = "structures" | "items";

export interface PaletteEntry {
  kind: ObjectKind;
  group: PaletteGroup;
  label: string;
}

/** The full object vocabulary: two structures and three items. */
export const PALETTE: readonly PaletteEntry[] = [
  { kind: "wall", group: "structures", label: "Wall" },
  { kind: "floor", group: "structures", label: "Floor" },
  { kind: "clock", group: "items", label: "Clock" },
  { kind: "window", group: "items", label: "Window" },
  { kind: "desk_chair", group: "items", label: "Desk & chair" },
];

/** Mutating command vocabulary available in each mode. */
const MODE_VOCABULARY: Record<EditMode, readonly CommandOp[]> = {
  default: ["add_plane", "add_object"],
  move: ["move_object"],
  scale: ["scale_object"],
  remove: ["remove_object"],
};

export function modeAllows(mode: EditMode, op: CommandOp): boolean {
  return MODE_VOCABULARY[mode].includes(op);
}

export type FeedbackApplication = "applied" | "stale" | "error";

export class EditorState {
  mode: EditMode = "default";
  paletteSelection: ObjectKind | null = null;
  selectedObject: string | null = null;
  revision = 0;
  scene: SceneSnapshot = EMPTY_SCENE;
  statements: StatementRow[] = [];

  private listeners: Array<() => void> = [];

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((entry) => entry !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  setMode(mode: EditMode): void {
    if (this.mode === mode) return;
    this.mode = mode;
    this.notify();
  }

  selectPalette(kind: ObjectKind | null): void {
    this.paletteSelection = kind;
    this.notify();
  }

  selectObject(id: string | null): void {
    if (id !== null && !this.scene.objects.some((obj) => obj.id === id)) {
      return; // unknown ids are not selectable
    }
    this.selectedObject = id;
    this.notify();
  }

  /**
   * Fold one Feedback into the rendered state.  Stale payloads (a revision
   * below what is already rendered) are discarded; error feedback never
   * touches the scene.
   */
  applyFeedback(feedback: Feedback): FeedbackApplication {
    if (feedback.outcome === "error") {
      return "error";
    }
    if (feedback.revision < this.revision) {
      return "stale";
    }
    this.revision = feedback.revision;
    const payload = feedback.payload;
    if (payload?.scene) {
      this.scene = payload.scene;
      if (this.selectedObject !== null && !this.scene.objects.some((o) => o.id === this.selectedObject)) {
        this.selectedObject = null;
      }
    }
    if (payload?.statements) {
      this.statements = payload.statements;
    }
    this.notify();
    return "applied";
  }

  /** Panel rows: the full list, or only rows mentioning the selected object. */
  panelRows(): StatementRow[] {
    if (this.selectedObject === null) {
      return this.statements;
    }
    const id = this.selectedObject;
    return this.statements.filter((row) => row.subject === id || row.target === id);
  }

  selectedObjectScale(): number {
    const selected = this.scene.objects.find((obj) => obj.id === this.selectedObject);
    return selected ? selected.scale : 1.0;
  }
}

export function clampScale(value: number): number {
  return Math.min(SCALE_MAX, Math.max(SCALE_MIN, value));
}
