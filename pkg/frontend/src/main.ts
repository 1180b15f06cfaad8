/**
 * Browser entry point: open the live channel, build the app, and wire
 * pointer gestures on the 3D canvas to editor actions.
 */

import { createEditorApp } from "./app";
import { SessionChannel, SocketLike } from "./channel";
import { Viewport } from "./viewport";

const DEFAULT_PORT = "8137";

/** Adapt a real WebSocket to the channel's socket interface, buffering
 * anything sent before the connection finishes opening. */
function wrapWebSocket(ws: WebSocket): SocketLike {
  const backlog: string[] = [];
  const adapter: SocketLike = {
    send(data: string) {
      if (ws.readyState === WebSocket.OPEN) {
        ws.send(data);
      } else {
        backlog.push(data);
      }
    },
    close() {
      ws.close();
    },
    onmessage: null,
    onclose: null,
  };
  ws.addEventListener("open", () => {
    for (const data of backlog.splice(0)) {
      ws.send(data);
    }
  });
  ws.onmessage = (event) => adapter.onmessage?.({ data: String(event.data) });
  ws.onclose = () => adapter.onclose?.();
  return adapter;
}

function start(): void {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app container");
  }

  const params = new URLSearchParams(window.location.search);
  const port = params.get("port") ?? DEFAULT_PORT;
  const host = params.get("host") ?? (window.location.hostname || "127.0.0.1");
  const ws = new WebSocket(`ws://${host}:${port}/channel`);
  const channel = new SessionChannel(wrapWebSocket(ws));

  const viewportHost = document.createElement("div");
  const app = createEditorApp(root, channel, undefined);
  const hostSlot = root.querySelector<HTMLElement>("#viewport-host");
  (hostSlot ?? root).appendChild(viewportHost);
  viewportHost.style.width = "100%";
  viewportHost.style.height = "100%";
  const viewport = new Viewport(viewportHost);
  app.state.subscribe(() => viewport.syncScene(app.state.scene, app.state.selectedObject));

  channel.onSessionOpen = (sessionId) => app.ui.showToast(`session ${sessionId} opened`);
  channel.onClose = () => app.ui.showToast("connection closed");

  let dragging = false;
  viewport.canvas.addEventListener("pointerdown", (event) => {
    const mode = app.state.mode;
    if (mode === "default") {
      const point = viewport.pickPoint(event.clientX, event.clientY);
      if (point) {
        void app.placeAt(point)?.catch(() => undefined);
      }
      return;
    }
    const id = viewport.pickObject(event.clientX, event.clientY);
    if (id) {
      app.state.selectObject(id);
      if (mode === "move") {
        dragging = true;
      }
    }
  });
  viewport.canvas.addEventListener("pointerup", (event) => {
    if (!dragging) {
      return;
    }
    dragging = false;
    const point = viewport.pickPoint(event.clientX, event.clientY);
    if (point) {
      void app.moveSelectedTo(point)?.catch(() => undefined);
    }
  });
}

start();
