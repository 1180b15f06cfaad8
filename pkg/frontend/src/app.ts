/**
 * Editor application wiring: state + channel + DOM chrome + (optionally) a
 * 3D viewport.  Every action is exposed as a method so pointer handlers and
 * tests drive the exact same code paths.
 */

import { SessionChannel } from "./channel";
import { Feedback, ItemKind, SceneSnapshot, Vec3Tuple } from "./protocol";
import { EditMode, EditorState, clampScale, modeAllows } from "./state";
import { UiHandles, buildUi, downloadCsv } from "./ui";

/** The one viewport capability the app needs; tests simply omit it. */
export interface ViewportLike {
  syncScene(scene: SceneSnapshot, selectedObject: string | null): void;
}

export interface ExportResult {
  feedback: Feedback;
  csv: string | null;
  blob: Blob | null;
}

const WALL_EXTENTS: readonly [number, number] = [4.0, 2.5];
const FLOOR_EXTENTS: readonly [number, number] = [6.0, 6.0];

export class EditorApp {
  readonly state: EditorState;
  readonly channel: SessionChannel;
  readonly ui: UiHandles;

  /** The most recent successful export, kept for download verification. */
  lastExport: ExportResult | null = null;

  private viewport: ViewportLike | null;
  private pendingRemoval: string | null = null;

  constructor(root: HTMLElement, channel: SessionChannel, viewport?: ViewportLike) {
    this.state = new EditorState();
    this.channel = channel;
    this.viewport = viewport ?? null;

    this.ui = buildUi(root, this.state, {
      onModeSelect: (mode) => this.setMode(mode),
      onPaletteSelect: (kind) => this.state.selectPalette(kind),
      onObjectSelect: (id) => this.state.selectObject(id),
      onScaleCommit: (value) => void this.commitScale(value)?.catch(() => undefined),
      onRemoveRequest: () => void this.requestRemove(),
      onRemoveConfirm: () => void this.confirmRemove()?.catch(() => undefined),
      onRemoveCancel: () => this.cancelRemove(),
      onGenerate: () => void this.generate().catch(() => undefined),
      onExport: () => void this.exportCsv().catch(() => undefined),
    });

    channel.onFeedback = (feedback) => {
      const applied = this.state.applyFeedback(feedback);
      if (applied === "error" && feedback.error) {
        this.ui.showToast(`${feedback.error.code}: ${feedback.error.message}`);
      }
    };
    this.state.subscribe(() => {
      this.viewport?.syncScene(this.state.scene, this.state.selectedObject);
    });
  }

  setMode(mode: EditMode): void {
    if (this.ui.isRemoveModalOpen()) {
      this.cancelRemove();
    }
    this.state.setMode(mode);
  }

  /**
   * Place the selected palette entry at a world point.  Only the default
   * mode may create things; anywhere else this is a no-op.
   */
  placeAt(point: Vec3Tuple): Promise<Feedback> | null {
    const kind = this.state.paletteSelection;
    if (kind === null) {
      return null;
    }
    if (kind === "wall" || kind === "floor") {
      if (!modeAllows(this.state.mode, "add_plane")) return null;
      const [extentU, extentV] = kind === "wall" ? WALL_EXTENTS : FLOOR_EXTENTS;
      return this.channel.send({
        op: "add_plane",
        orientation: kind === "wall" ? "vertical" : "horizontal",
        origin: point,
        u_axis: [1, 0, 0],
        extent_u: extentU,
        extent_v: extentV,
      });
    }
    if (!modeAllows(this.state.mode, "add_object")) return null;
    return this.channel.send({ op: "add_object", kind: kind as ItemKind, position: point });
  }

  /** Commit a drag: ask the server to move the selected object to a point. */
  moveSelectedTo(point: Vec3Tuple): Promise<Feedback> | null {
    const id = this.state.selectedObject;
    if (id === null || !modeAllows(this.state.mode, "move_object")) {
      return null;
    }
    return this.channel.send({ op: "move_object", id, position: point });
  }

  /** Commit a slider value; the factor is clamped to the legal range. */
  commitScale(value: number): Promise<Feedback> | null {
    const id = this.state.selectedObject;
    if (id === null || !modeAllows(this.state.mode, "scale_object")) {
      return null;
    }
    return this.channel.send({ op: "scale_object", id, factor: clampScale(value) });
  }

  /** Open the confirmation dialog; nothing is sent until confirmation. */
  requestRemove(): boolean {
    const id = this.state.selectedObject;
    if (id === null || !modeAllows(this.state.mode, "remove_object")) {
      return false;
    }
    this.pendingRemoval = id;
    this.ui.openRemoveModal(id);
    return true;
  }

  confirmRemove(): Promise<Feedback> | null {
    const id = this.pendingRemoval;
    this.pendingRemoval = null;
    this.ui.closeRemoveModal();
    if (id === null) {
      return null;
    }
    return this.channel.send({ op: "remove_object", id });
  }

  cancelRemove(): void {
    this.pendingRemoval = null;
    this.ui.closeRemoveModal();
  }

  generate(): Promise<Feedback> {
    return this.channel.send({ op: "generate" });
  }

  async exportCsv(): Promise<ExportResult> {
    const feedback = await this.channel.send({ op: "export" });
    let blob: Blob | null = null;
    const csv = feedback.payload?.csv ?? null;
    if (feedback.outcome === "ok" && csv !== null) {
      blob = downloadCsv(csv);
    }
    const result: ExportResult = { feedback, csv, blob };
    this.lastExport = result;
    return result;
  }
}

export function createEditorApp(
  root: HTMLElement,
  channel: SessionChannel,
  viewport?: ViewportLike,
): EditorApp {
  return new EditorApp(root, channel, viewport);
}
