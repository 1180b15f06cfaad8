/**
 * Three.js viewport: renders planes and objects from scene snapshots and
 * answers picking queries for pointer handlers.  Rendering only — all scene
 * truth comes from the server snapshots.
 */

import * as THREE from "three";
import { ObjectSnapshot, PlaneSnapshot, SceneSnapshot, Vec3Tuple } from "./protocol";

const UP = new THREE.Vector3(0, 1, 0);
const SELECTION_EMISSIVE = new THREE.Color(0x4d9fff);

function planeBasis(plane: PlaneSnapshot): { u: THREE.Vector3; v: THREE.Vector3; n: THREE.Vector3 } {
  const u = new THREE.Vector3(...plane.u_axis).normalize();
  if (plane.orientation === "vertical") {
    const n = new THREE.Vector3(-u.z, 0, u.x);
    return { u, v: UP.clone(), n };
  }
  const v = new THREE.Vector3(-u.z, 0, u.x);
  return { u, v, n: UP.clone() };
}

function objectGeometry(kind: string): THREE.BufferGeometry {
  if (kind === "clock") {
    const geometry = new THREE.CylinderGeometry(0.18, 0.18, 0.06, 24);
    geometry.rotateX(Math.PI / 2); // face the local +z (facing) direction
    return geometry;
  }
  if (kind === "window") {
    return new THREE.BoxGeometry(0.9, 1.2, 0.06);
  }
  return new THREE.BoxGeometry(1.1, 0.75, 0.7);
}

export class Viewport {
  private renderer: THREE.WebGLRenderer;
  private world = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private content = new THREE.Group();
  private raycaster = new THREE.Raycaster();
  private ground = new THREE.Plane(UP.clone(), 0);
  private planeMeshes = new Map<string, THREE.Mesh>();
  private objectMeshes = new Map<string, THREE.Mesh>();

  constructor(private host: HTMLElement) {
    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    host.appendChild(this.renderer.domElement);

    this.camera = new THREE.PerspectiveCamera(55, 1, 0.1, 100);
    this.camera.position.set(6, 5, 9);
    this.camera.lookAt(0, 1, 0);

    this.world.background = new THREE.Color(0x10151c);
    this.world.add(new THREE.AmbientLight(0xffffff, 0.7));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(4, 8, 6);
    this.world.add(sun);
    this.world.add(new THREE.GridHelper(20, 20, 0x334455, 0x223344));
    this.world.add(this.content);

    this.resize();
    window.addEventListener("resize", () => this.resize());
    this.renderer.setAnimationLoop(() => this.renderer.render(this.world, this.camera));
  }

  get canvas(): HTMLCanvasElement {
    return this.renderer.domElement;
  }

  /** Rebuild the render graph from a snapshot (scenes are small). */
  syncScene(snapshot: SceneSnapshot, selectedObject: string | null): void {
    for (const mesh of this.content.children.slice()) {
      this.content.remove(mesh);
      if (mesh instanceof THREE.Mesh) {
        mesh.geometry.dispose();
        (mesh.material as THREE.Material).dispose();
      }
    }
    this.planeMeshes.clear();
    this.objectMeshes.clear();

    for (const plane of snapshot.planes) {
      const mesh = this.buildPlaneMesh(plane);
      this.planeMeshes.set(plane.id, mesh);
      this.content.add(mesh);
    }
    for (const object of snapshot.objects) {
      const mesh = this.buildObjectMesh(object, object.id === selectedObject);
      this.objectMeshes.set(object.id, mesh);
      this.content.add(mesh);
    }
  }

  /** World point under the cursor: a plane surface if hit, else the ground. */
  pickPoint(clientX: number, clientY: number): Vec3Tuple | null {
    this.aim(clientX, clientY);
    const hits = this.raycaster.intersectObjects([...this.planeMeshes.values()], false);
    if (hits.length > 0) {
      const p = hits[0].point;
      return [p.x, p.y, p.z];
    }
    const target = new THREE.Vector3();
    if (this.raycaster.ray.intersectPlane(this.ground, target)) {
      return [target.x, target.y, target.z];
    }
    return null;
  }

  pickObject(clientX: number, clientY: number): string | null {
    this.aim(clientX, clientY);
    const hits = this.raycaster.intersectObjects([...this.objectMeshes.values()], false);
    if (hits.length === 0) {
      return null;
    }
    const id = hits[0].object.userData.objectId;
    return typeof id === "string" ? id : null;
  }

  private aim(clientX: number, clientY: number): void {
    const rect = this.canvas.getBoundingClientRect();
    const ndc = new THREE.Vector2(
      ((clientX - rect.left) / rect.width) * 2 - 1,
      -((clientY - rect.top) / rect.height) * 2 + 1,
    );
    this.raycaster.setFromCamera(ndc, this.camera);
  }

  private buildPlaneMesh(plane: PlaneSnapshot): THREE.Mesh {
    const { u, v, n } = planeBasis(plane);
    const geometry = new THREE.PlaneGeometry(plane.extent_u, plane.extent_v);
    const material = new THREE.MeshStandardMaterial({
      color: plane.orientation === "vertical" ? 0xcdc4b4 : 0xb9c8b9,
      side: THREE.DoubleSide,
      transparent: true,
      opacity: 0.88,
    });
    const mesh = new THREE.Mesh(geometry, material);
    const center = new THREE.Vector3(...plane.origin)
      .addScaledVector(u, plane.extent_u / 2)
      .addScaledVector(v, plane.extent_v / 2);
    mesh.matrixAutoUpdate = false;
    mesh.matrix.makeBasis(u, v, n).setPosition(center);
    mesh.userData.planeId = plane.id;
    return mesh;
  }

  private buildObjectMesh(object: ObjectSnapshot, selected: boolean): THREE.Mesh {
    const material = new THREE.MeshStandardMaterial({
      color: object.kind === "desk_chair" ? 0x8a6f4d : object.kind === "window" ? 0x73a8c9 : 0xd8d3c8,
      emissive: selected ? SELECTION_EMISSIVE : new THREE.Color(0x000000),
      emissiveIntensity: selected ? 0.65 : 0.0,
    });
    const mesh = new THREE.Mesh(objectGeometry(object.kind), material);
    mesh.position.set(...object.position);
    mesh.rotation.y = object.yaw;
    mesh.scale.setScalar(object.scale);
    mesh.userData.objectId = object.id;
    return mesh;
  }

  private resize(): void {
    const width = this.host.clientWidth || 800;
    const height = this.host.clientHeight || 600;
    this.renderer.setSize(width, height);
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
  }
}
