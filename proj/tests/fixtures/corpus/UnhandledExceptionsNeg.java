package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class UnhandledExceptionsNeg {
  void run(Channel ch) {
    try {
      ch.read();
      Clock.sleep(5);
    } catch (IOException e) {
      handle(e);
    } catch (InterruptedException e) {
      Thread.currentThread().interrupt();
    }
  }

  private void handle(Throwable t) {}
}
